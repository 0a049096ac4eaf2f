import json
import math

import pytest

from crtorsion.errors import ConfigurationError
from crtorsion.io import dumps
from crtorsion.seifert import random_data, trivial_data
from crtorsion.trace_formula import (
    IdentityReport,
    check_kappa_consistency,
    check_selberg,
    check_small_t,
    check_zeta_identity,
)

from conftest import lens21, poincare, third_torus


def test_selberg_trivial():
    r = check_selberg(trivial_data(0, 1), [0.1, 1.0, 10.0], 1e-8)
    assert r.passed


def test_selberg_poincare():
    assert check_selberg(poincare(), [0.2, 1.0, 5.0], 1e-8).passed


def test_selberg_third():
    assert check_selberg(third_torus(), [0.5, 2.0], 1e-8).passed


def test_selberg_grid_guards():
    with pytest.raises(ConfigurationError):
        check_selberg(poincare(), [], 1e-8)
    with pytest.raises(ConfigurationError):
        check_selberg(poincare(), [0.0, 1.0], 1e-8)


def test_zeta_identity_named():
    assert check_zeta_identity(trivial_data(0, 1), [-1.5, -0.7, -1 + 0.3j], 1e-6).passed
    assert check_zeta_identity(lens21(), [-1.5], 1e-6).passed


def test_zeta_identity_rejects_negative_even():
    with pytest.raises(ConfigurationError):
        check_zeta_identity(trivial_data(0, 1), [-2 + 0j], 1e-6)
    with pytest.raises(ConfigurationError):
        check_zeta_identity(trivial_data(0, 1), [0.5], 1e-6)


def test_small_t_trivial_recovers_pi_squared():
    r = check_small_t(trivial_data(0, 1), [0.2, 0.1, 0.05])
    assert r.passed
    assert r.extra["C"] == pytest.approx(math.pi**2, rel=1e-3)


def test_small_t_identically_zero():
    r = check_small_t(third_torus())
    assert r.passed and r.extra["C"] == math.inf


def test_small_t_guard():
    with pytest.raises(ConfigurationError):
        check_small_t(poincare(), [0.8, 0.1, 0.05])


def test_kappa_consistency():
    r = check_kappa_consistency(trivial_data(0, 1), [2.0])
    assert r.passed
    assert r.lhs[0] == pytest.approx(2 + 4 * math.pi**4 / 90, abs=r.bounds[0] + 1e-10)
    assert check_kappa_consistency(random_data(5), [1.5, 1 + 2j]).passed
    with pytest.raises(ConfigurationError):
        check_kappa_consistency(trivial_data(0, 1), [0.9])


def test_report_json_round_trip():
    r = check_zeta_identity(poincare(), [-1.5, -1 + 0.3j], 1e-6)
    again = IdentityReport.from_dict(json.loads(dumps(r.to_dict())))
    assert again == r


def test_tolerance_accounting_is_strict():
    r = IdentityReport.build("x", [1.0], [1.0], [1.0 + 2e-8], [1e-8], [0.0])
    assert not r.passed
    r = IdentityReport.build("x", [1.0], [1.0], [1.0 + 5e-9], [1e-8], [0.0])
    assert r.passed
