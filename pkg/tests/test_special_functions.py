import cmath
import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crtorsion.errors import DomainError, PoleError
from crtorsion.special_functions import (
    f_factor,
    hurwitz_zeta,
    pair_zeta,
    pair_zeta_deriv0,
    riemann_zeta,
)


def mp_hurwitz(s, a):
    with mpmath.workdps(40):
        return complex(mpmath.zeta(mpmath.mpc(s), mpmath.mpf(a)))


def rel_err(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def scaled_err(a, b):
    # absolute error, relative once the value exceeds 1 (binary64 cannot do better)
    return abs(a - b) / max(1.0, abs(b))


@pytest.mark.parametrize(
    "s,a",
    [(2.0, 0.5), (0.5, 0.3), (-0.5, 0.7), (-2.5, 0.25), (3 + 4j, 0.9), (-1.3 + 2.2j, 0.1), (0.25 - 7j, 1.0),
     (-7.5, 0.4), (-15.2 + 1j, 0.65), (25.0, 0.8), (1e-3, 0.2), (-40.0, 0.3)],
)
def test_hurwitz_against_mpmath(s, a):
    assert scaled_err(hurwitz_zeta(s, a), mp_hurwitz(s, a)) < 1e-12


@settings(max_examples=80, deadline=None)
@given(st.floats(min_value=-40, max_value=40), st.floats(min_value=-40, max_value=40), st.floats(min_value=0.01, max_value=1.0))
def test_hurwitz_disc_of_radius_40(re, im, a):
    s = complex(re, im)
    if abs(s) > 40 or abs(s - 1) < 1e-3:
        return
    assert scaled_err(hurwitz_zeta(s, a), mp_hurwitz(s, a)) < 1e-12


def test_named_values():
    assert hurwitz_zeta(0, 0.25) == pytest.approx(0.25, abs=1e-15)
    assert abs(hurwitz_zeta(2, 0.5) - math.pi**2 / 2) < 1e-12
    assert abs(hurwitz_zeta(2, 1.0) - math.pi**2 / 6) < 1e-12
    assert abs(pair_zeta(0, 0.3)) < 1e-14
    assert abs(pair_zeta(2, 0.5) - math.pi**2) < 1e-12
    assert pair_zeta_deriv0(0.5) == pytest.approx(-math.log(2), abs=1e-15)


def test_pair_zeta_against_fourier_series():
    # zeta(s,x) + zeta(s,1-x) = 4 Gamma(1-s) sin(pi s/2) (2 pi)^(s-1) sum cos(2 pi n x) n^(s-1).
    # At s = -1, x = 1/3 the partial sums of cos(2 pi n/3) are bounded by 1, so summation
    # by parts bounds the tail past n by 2/(n+1)^2.
    x, n = 1 / 3, 200_000
    series = math.fsum(math.cos(2 * math.pi * j * x) / j**2 for j in range(1, n + 1))
    prefactor = 4 * math.gamma(2) * math.sin(-math.pi / 2) * (2 * math.pi) ** -2
    tail = abs(prefactor) * 2 / (n + 1) ** 2
    assert tail < 1e-10
    assert abs(pair_zeta(-1, x) - prefactor * series) < 1e-8


def test_hurwitz_direct_partial_sum():
    # Re s = 3: direct sum plus integral tail estimate is an independent reference
    s, a, n = 3.0, 0.3, 200000
    head = math.fsum((k + a) ** -s for k in range(n))
    tail = (n + a) ** (1 - s) / (s - 1) + 0.5 * (n + a) ** -s
    assert abs(hurwitz_zeta(s, a).real - (head + tail)) < 1e-13


def test_known_values():
    assert abs(riemann_zeta(2) - math.pi**2 / 6) < 1e-14
    assert abs(riemann_zeta(0) + 0.5) < 1e-13
    assert abs(riemann_zeta(-1) + 1 / 12) < 1e-13
    assert abs(riemann_zeta(-2)) < 1e-13
    # zeta(0, a) = 1/2 - a
    for a in (0.1, 0.5, 0.9):
        assert abs(hurwitz_zeta(0, a) - (0.5 - a)) < 1e-14


def test_pole_at_one():
    with pytest.raises(PoleError) as info:
        hurwitz_zeta(1.0, 0.4)
    assert info.value.residue == 1
    with pytest.raises(PoleError) as info:
        pair_zeta(1.0 + 1e-13, 0.3)
    assert info.value.residue == 2


def test_domain():
    with pytest.raises(DomainError):
        hurwitz_zeta(2.0, 0.0)
    with pytest.raises(DomainError):
        hurwitz_zeta(2.0, 1.5)


@pytest.mark.parametrize("x", [0.1, 1 / 3, 0.5, 0.77])
def test_lerch_derivative(x):
    with mpmath.workdps(30):
        ref = mpmath.diff(lambda s: mpmath.zeta(s, x) + mpmath.zeta(s, 1 - x), 0)
    assert abs(pair_zeta_deriv0(x) - float(ref)) < 1e-13


def test_f_factor_poles_and_values():
    assert f_factor(0).is_pole and f_factor(0).residue == 1
    r = f_factor(-4)
    assert r.is_pole and abs(r.residue - 1 / 24) < 1e-15
    assert abs(f_factor(-2).residue + 0.5) < 1e-15
    # odd negative integers are regular: cos kills the Gamma pole
    assert not f_factor(-3).is_pole
    for s in (0.7, -1.5, -0.5 + 2j, 3.3):
        ref = complex(mpmath.gamma(s) * mpmath.cos(mpmath.pi * s / 2))
        assert rel_err(f_factor(s).value, ref) < 1e-13
    assert abs(f_factor(-3).value - complex(mpmath.limit(lambda s: mpmath.gamma(s) * mpmath.cos(mpmath.pi * s / 2), -3))) < 1e-12


@settings(max_examples=60, deadline=None)
@given(
    st.floats(min_value=-6, max_value=8).filter(lambda v: abs(v - 1) > 1e-3),
    st.floats(min_value=-5, max_value=5),
    st.floats(min_value=0.05, max_value=1.0),
)
def test_duplication_formula(re, im, a):
    # zeta(s, a/2) + zeta(s, (a+1)/2) = 2^s zeta(s, a)
    s = complex(re, im)
    lhs = hurwitz_zeta(s, a / 2) + hurwitz_zeta(s, (a + 1) / 2)
    rhs = cmath.exp(s * math.log(2)) * hurwitz_zeta(s, a)
    assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=-8, max_value=6), st.floats(min_value=-4, max_value=4), st.floats(min_value=0.02, max_value=0.98))
def test_pair_symmetry(re, im, x):
    s = complex(re, im)
    if abs(s - 1) < 1e-3:
        return
    assert abs(pair_zeta(s, x) - pair_zeta(s, 1 - x)) <= 1e-11 * max(1.0, abs(pair_zeta(s, x)))
