"""Two-sided checks of the spectral = dynamical identities.

Each check evaluates the spectral side through ``spectral``/``torsion`` and
the dynamical side through ``dynamics`` (no shared summation code), and
judges agreement against the requested tolerance plus any reported
truncation bounds.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import mpmath
import numpy as np

from .dynamics import dynamical_theta, z_rho_closed, z_rho_series
from .errors import ConfigurationError, TruncationError
from .seifert import HolonomyData, orbifold_invariants, require_valid
from .spectral import kappa_direct_series, spectral_heat_trace
from .torsion import kappa_eval

__all__ = [
    "IdentityReport",
    "check_selberg",
    "check_zeta_identity",
    "check_small_t",
    "check_kappa_consistency",
    "DEFAULT_T_GRID",
    "DEFAULT_S_POINTS",
    "DEFAULT_SERIES_POINTS",
    "DEFAULT_SMALL_T",
]

DEFAULT_T_GRID = (0.05, 0.2, 1.0, 5.0, 10.0)
DEFAULT_S_POINTS = (-1.5 + 0j, -0.7 + 0j, -1.0 + 0.3j)
DEFAULT_SERIES_POINTS = (1.5 + 0j, 2.0 + 0j, 1.0 + 2.0j)
DEFAULT_SMALL_T = (0.05, 0.04, 0.03, 0.025, 0.02)

SMALL_T_RESIDUAL = 0.1


def _pair(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


@dataclass
class IdentityReport:
    """Outcome of one identity check.

    ``tolerances[k]`` is the full allowance at ``points[k]`` (requested
    tolerance plus truncation bounds); ``passed`` holds iff every
    ``|lhs - rhs|`` is within it.
    """

    name: str
    points: list
    lhs: list
    rhs: list
    tolerances: list[float]
    bounds: list[float]
    deviations: list[float]
    passed: bool
    max_deviation: float
    extra: dict = field(default_factory=dict)

    @classmethod
    def build(cls, name, points, lhs, rhs, tolerances, bounds, extra=None):
        deviations = [float(abs(a - b)) for a, b in zip(lhs, rhs)]
        passed = all(d <= tol for d, tol in zip(deviations, tolerances))
        return cls(
            name=name,
            points=list(points),
            lhs=list(lhs),
            rhs=list(rhs),
            tolerances=[float(v) for v in tolerances],
            bounds=[float(v) for v in bounds],
            deviations=deviations,
            passed=passed,
            max_deviation=max(deviations) if deviations else 0.0,
            extra=dict(extra or {}),
        )

    def to_dict(self) -> dict:
        """Plain-data form; complex numbers become ``[re, im]`` pairs."""
        data = asdict(self)
        for key in ("points", "lhs", "rhs"):
            data[key] = [_pair(v) if isinstance(v, complex) else float(v) for v in data[key]]
        return data

    @classmethod
    def from_dict(cls, data: dict) -> IdentityReport:
        def unpack(values):
            return [complex(*v) if isinstance(v, list) else v for v in values]

        out = dict(data)
        for key in ("points", "lhs", "rhs"):
            out[key] = unpack(out[key])
        return cls(**out)

    def table(self) -> str:
        lines = [f"{self.name}: {'PASS' if self.passed else 'FAIL'}  max |lhs-rhs| = {self.max_deviation:.3e}"]
        lines.append(f"  {'point':>24}  {'lhs':>24}  {'rhs':>24}  {'dev':>10}  {'allowed':>10}")
        for p, a, b, d, tol in zip(self.points, self.lhs, self.rhs, self.deviations, self.tolerances):
            lines.append(f"  {_short(p):>24}  {_short(a):>24}  {_short(b):>24}  {d:10.3e}  {tol:10.3e}")
        return "\n".join(lines)


def _short(v) -> str:
    if isinstance(v, complex):
        return f"{v.real:.10g}{v.imag:+.10g}j"
    return f"{float(v):.16g}"


def _euler_term(hd: HolonomyData, t: float) -> float:
    _, chi_orb, _ = orbifold_invariants(hd.seifert)
    return hd.dim * math.sqrt(math.pi) * float(chi_orb) / math.sqrt(t)


def check_selberg(hd: HolonomyData, t_grid=DEFAULT_T_GRID, tol: float = 1e-8) -> IdentityReport:
    """Heat trace against ``dim V sqrt(pi) chi(Sigma)/sqrt(t) + theta(t)``."""
    require_valid(hd)
    t_grid = [float(t) for t in t_grid]
    if not t_grid:
        raise ConfigurationError("t grid is empty")
    if any(not t > 0 for t in t_grid):
        raise ConfigurationError(f"t grid must be positive: {t_grid}")
    lhs, rhs, bounds = [], [], []
    for t in t_grid:
        spec, b1 = spectral_heat_trace(hd, t, tol / 3)
        theta, b2 = dynamical_theta(hd, t, tol / 3)
        lhs.append(spec)
        rhs.append(_euler_term(hd, t) + theta)
        bounds.append(b1 + b2)
    return IdentityReport.build("selberg", t_grid, lhs, rhs, [tol] * len(t_grid), bounds)


def _is_negative_even(s: complex) -> bool:
    if abs(s.imag) > 1e-12 or s.real > -1.0:
        return False
    k = round(-s.real / 2.0)
    return k >= 1 and abs(s.real + 2 * k) < 1e-9


def check_zeta_identity(hd: HolonomyData, s_points=DEFAULT_S_POINTS, tol: float = 1e-6) -> IdentityReport:
    """Closed form ``f(s)(kappa(s/2) - kappa(M, rho))`` against the orbit sum."""
    require_valid(hd)
    s_points = [complex(s) for s in s_points]
    if not s_points:
        raise ConfigurationError("no evaluation points")
    for s in s_points:
        if s.real >= 0:
            raise ConfigurationError(f"zeta identity needs Re(s) < 0, got {s}")
        if _is_negative_even(s):
            raise ConfigurationError(f"s = {s} is a negative even integer (pole of f)")
    lhs, rhs, bounds = [], [], []
    for s in s_points:
        closed = z_rho_closed(hd, s)
        series, bound = z_rho_series(hd, s, tol / 2)
        lhs.append(closed.value)
        rhs.append(series)
        bounds.append(bound)
    return IdentityReport.build("zeta", s_points, lhs, rhs, [tol] * len(s_points), bounds)


def small_t_dps(t: float) -> int:
    """Working precision that resolves ``e^{-pi^2/t}`` with 30 digits to spare."""
    return 30 + math.ceil(math.pi**2 / (t * math.log(10.0)))


def check_small_t(hd: HolonomyData, t_list=DEFAULT_SMALL_T) -> IdentityReport:
    """Gaussian decay of ``d(t) = |heat trace - dim V sqrt(pi) chi(Sigma)/sqrt(t)|``.

    Fits ``ln d + ln(t)/2 = a - C/t`` by least squares. Passes iff ``C > 0``
    and the largest residual is below ``0.1``; if ``d`` vanishes identically
    the check passes with ``C = inf``. The heat trace is summed in ``mpmath``.
    The report's lhs is ``ln d(t)`` and its rhs the fitted line.
    """
    require_valid(hd)
    t_list = [float(t) for t in t_list]
    if len(t_list) < 3:
        raise ConfigurationError("small-t fit needs at least three points")
    if any(not 0 < t <= 0.5 for t in t_list):
        raise ConfigurationError(f"small-t grid must lie in (0, 0.5]: {t_list}")
    _, chi_orb, _ = orbifold_invariants(hd.seifert)

    log_d = []
    for t in t_list:
        dps = small_t_dps(t)
        value, bound = spectral_heat_trace(hd, t, dps=dps)
        with mpmath.workdps(dps):
            main = hd.dim * mpmath.sqrt(mpmath.pi) * mpmath.mpf(chi_orb.numerator) / chi_orb.denominator
            d = abs(value - main / mpmath.sqrt(t))
            if d <= 100 * bound:
                log_d.append(None)
            else:
                log_d.append(float(mpmath.log(d)))

    if all(v is None for v in log_d):
        return IdentityReport.build(
            "small_t", t_list, [0.0] * len(t_list), [0.0] * len(t_list), [SMALL_T_RESIDUAL] * len(t_list),
            [0.0] * len(t_list), extra={"C": math.inf, "intercept": None, "identically_zero": True},
        )
    if any(v is None for v in log_d):
        raise ConfigurationError("remainder falls below working precision on part of the grid")

    x = np.array([1.0 / t for t in t_list])
    y = np.array(log_d) + 0.5 * np.log(t_list)
    slope, intercept = np.polyfit(x, y, 1)
    fitted = intercept + slope * x
    c_fit = -float(slope)
    report = IdentityReport.build(
        "small_t", t_list, y.tolist(), fitted.tolist(), [SMALL_T_RESIDUAL] * len(t_list), [0.0] * len(t_list),
        extra={"C": c_fit, "intercept": float(intercept), "identically_zero": False},
    )
    report.passed = report.passed and c_fit > 0
    return report


def check_kappa_consistency(hd: HolonomyData, s_points=DEFAULT_SERIES_POINTS, tol=None) -> IdentityReport:
    """Direct mode sum against the closed form, allowed ``tail bound + 1e-10``.

    With ``tol=None`` the series tolerance starts at ``1e-8`` and is relaxed
    by factors of 10 until the mode budget suffices.
    """
    require_valid(hd)
    s_points = [complex(s) for s in s_points]
    if not s_points:
        raise ConfigurationError("no evaluation points")
    if any(s.real < 1.0 for s in s_points):
        raise ConfigurationError(f"series check needs Re(s) >= 1: {s_points}")
    lhs, rhs, bounds = [], [], []
    for s in s_points:
        target = 1e-8 if tol is None else tol
        while True:
            try:
                series, bound = kappa_direct_series(hd, s, target)
                break
            except TruncationError:
                if tol is not None or target >= 1e-3:
                    raise
                target *= 10.0
        lhs.append(series)
        rhs.append(kappa_eval(hd, s).value)
        bounds.append(bound)
    return IdentityReport.build(
        "kappa_series", s_points, lhs, rhs, [b + 1e-10 for b in bounds], bounds
    )
