import math
import pytest

from crtorsion.seifert import orbifold_invariants, random_data, trivial_data
from crtorsion.torsion import (
    kappa_eval,
    kappa_prime_zero,
    kappa_residue,
    numeric_residue,
    ray_singer_torsion,
)

from conftest import all_families, lens21, poincare


@pytest.mark.parametrize("seed", range(20))
def test_kappa_vanishes_at_zero(seed):
    assert abs(kappa_eval(random_data(seed), 0).value) < 1e-9


def test_kappa_trivial_closed_form():
    # kappa(s) = 2 (2 zeta(2s) + 1) for the trivial line on a sphere base
    hd = trivial_data(0, 1)
    assert abs(kappa_eval(hd, 1.0).value - (2 + 4 * math.pi**2 / 6)) < 1e-12


def test_residue_exact_and_numeric():
    for name, hd in all_families().items():
        _, chi_orb, _ = orbifold_invariants(hd.seifert)
        assert kappa_residue(hd) == chi_orb * hd.dim
        assert abs(numeric_residue(hd) - float(kappa_residue(hd))) < 1e-7, name


def test_pole_variant():
    v = kappa_eval(poincare(), 0.5 + 1e-12)
    assert v.is_pole
    assert v.residue == pytest.approx(1 / 30)


def test_named_torsions():
    assert ray_singer_torsion(trivial_data(0, 1)) == pytest.approx((2 * math.pi) ** 2, rel=1e-14)
    assert ray_singer_torsion(lens21()) == pytest.approx(4.0, rel=1e-14)
    assert ray_singer_torsion(poincare()) == pytest.approx((2 * math.pi) ** 2 / 30, rel=1e-14)
    assert kappa_prime_zero(lens21()) == pytest.approx(-2 * math.log(4), rel=1e-14)


@pytest.mark.parametrize("seed", range(20))
def test_two_path_torsion(seed):
    hd = random_data(seed)
    assert math.exp(-kappa_prime_zero(hd) / 2) == pytest.approx(ray_singer_torsion(hd), rel=1e-9)


def _fd_derivative(hd, h):
    return (kappa_eval(hd, h).value.real - kappa_eval(hd, -h).value.real) / (2 * h)


@pytest.mark.parametrize("seed", [0, 3, 8, 13])
def test_lerch_derivative_against_finite_differences(seed):
    hd = random_data(seed)
    # Richardson on central differences (error O(h^4))
    h = 1e-3
    fd = (4 * _fd_derivative(hd, h / 2) - _fd_derivative(hd, h)) / 3
    assert fd == pytest.approx(kappa_prime_zero(hd), abs=1e-7 * max(1.0, abs(fd)))

