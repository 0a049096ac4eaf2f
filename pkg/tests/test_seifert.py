import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crtorsion.errors import ValidationError
from crtorsion.seifert import (
    HolonomyBlock,
    HolonomyData,
    SeifertData,
    kappa_M_rho,
    lcm,
    orbifold_invariants,
    random_data,
    real_trace,
    require_valid,
    trivial_data,
    validate,
)

from conftest import poincare


def test_orbifold_invariants_poincare():
    chi_star, chi_orb, degree = orbifold_invariants(poincare().seifert)
    assert chi_star == -1
    assert chi_orb == F(1, 30)
    assert degree == -1 + F(1, 2) + F(1, 3) + F(1, 5)


def test_orbifold_invariants_sphere():
    assert orbifold_invariants(SeifertData(0, 1)) == (2, 2, 1)
    assert orbifold_invariants(SeifertData(2, 0)) == (-2, -2, 0)


def test_invariants_permutation_exact():
    a = SeifertData(1, 2, ((2, 1), (3, 2), (7, 3)))
    b = SeifertData(1, 2, ((7, 3), (2, 1), (3, 2)))
    assert orbifold_invariants(a) == orbifold_invariants(b)


def test_validation_messages():
    bad = trivial_data(0, 1, ((4, 2),))
    assert "gcd(alpha,beta) != 1 at fiber 0" in validate(bad)
    tiny = trivial_data(0, 1, ((1, 1),))
    assert "alpha < 2 at fiber 0" in validate(tiny)
    with pytest.raises(ValidationError) as info:
        require_valid(bad)
    assert info.value.violations


def test_congruence_checked():
    sd = SeifertData(0, 0, ((3, 1),))
    # alpha x_ij - x = 3/4 - 1/2 is not an integer
    hd = HolonomyData(sd, (HolonomyBlock(F(1, 2), 1, ((F(1, 4),),)),))
    assert any("congruence violated" in m for m in validate(hd))
    ok = HolonomyData(sd, (HolonomyBlock(F(1, 2), 1, ((F(1, 6),),)),))
    assert validate(ok) == []


def test_spectrum_length_and_range():
    sd = SeifertData(0, 0, ((2, 1),))
    hd = HolonomyData(sd, (HolonomyBlock(F(0), 2, ((F(0),),)),))
    assert any("expected 2" in m for m in validate(hd))
    hd = HolonomyData(SeifertData(0, 0), (HolonomyBlock(F(3, 2), 1),))
    assert any("not in [0,1)" in m for m in validate(hd))


def test_kappa_M_rho():
    assert kappa_M_rho(trivial_data(0, 1)) == 2
    assert kappa_M_rho(poincare()) == -1 + 3
    # only the x = 0 block counts
    sd = SeifertData(0, 1)
    hd = HolonomyData(sd, (HolonomyBlock(F(0), 2), HolonomyBlock(F(1, 3), 4)))
    assert kappa_M_rho(hd) == 4


def test_real_trace_examples():
    assert real_trace(trivial_data(0, 1, dim=3), 5) == 3
    half = HolonomyData(SeifertData(0, 2), (HolonomyBlock(F(1, 2), 1),))
    assert real_trace(half, 1) == -1
    sd = SeifertData(0, 0, ((3, 1),))
    hd = HolonomyData(sd, (HolonomyBlock(F(0), 2, ((F(1, 3), F(2, 3)),)),))
    assert validate(hd) == []
    assert real_trace(hd, 1, fiber=0) == pytest.approx(-1.0, abs=1e-15)


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_random_data_valid(seed):
    hd = random_data(seed)
    assert validate(hd) == []
    for block in hd.blocks:
        if block.x != 0:
            assert all(v != 0 for spec in block.fiber_spectra for v in spec)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=10**6), st.integers(min_value=1, max_value=50))
def test_real_trace_periodic(seed, n):
    hd = random_data(seed)
    period = lcm(block.x.denominator for block in hd.blocks)
    assert real_trace(hd, n) == pytest.approx(real_trace(hd, n + period), abs=1e-12)


def test_random_data_acyclic_flag():
    for seed in range(20):
        hd = random_data(seed, acyclic=True)
        assert hd.zero_block is None
        assert kappa_M_rho(hd) == 0


def test_random_data_deterministic():
    assert random_data(7) == random_data(7)
