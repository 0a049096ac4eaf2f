"""Closed Reeb orbits and the dynamical zeta/theta functions built on them.

Free homotopy classes of closed orbits:

* generic ``f^n`` (n >= 1): length ``2 pi n``, Fuller index ``chi(Sigma)/n``;
* exceptional ``f_i^n`` with ``alpha_i`` not dividing ``n``: length
  ``2 pi n / alpha_i``, Fuller index ``1/n``.

The orbit sums here never call the Hurwitz-zeta code; they are plain
summations, with an Euler-Maclaurin tail (and explicit remainder bound) for
the slowly convergent zeta series.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import bernoulli

from .errors import DomainError, PoleError, TruncationError
from .seifert import (
    HolonomyData,
    kappa_M_rho,
    lcm,
    orbifold_invariants,
    real_trace,
    require_valid,
)
from .special_functions import MeroValue, f_factor
from .torsion import kappa_eval

__all__ = [
    "OrbitClass",
    "enumerate_orbits",
    "orbit_table_rows",
    "ORBIT_CSV_HEADER",
    "z_rho_series",
    "z_rho_closed",
    "regularized_z_at_zero",
    "fried_z_zero",
    "dynamical_theta",
]

ORBIT_CSV_HEADER = ("kind", "fiber", "n", "length", "fuller_num", "fuller_den", "rtr")


@dataclass(frozen=True)
class OrbitClass:
    kind: str  # "generic" | "exceptional"
    fiber: int | None
    n: int
    length: float
    fuller: Fraction
    rtr: float

    def sort_key(self):
        return (self.length, self.kind != "generic", -1 if self.fiber is None else self.fiber, self.n)


def enumerate_orbits(hd: HolonomyData, max_length: float) -> list[OrbitClass]:
    """All orbit classes of length ``<= max_length``, sorted by length then kind."""
    require_valid(hd)
    if not max_length > 0:
        raise DomainError("max_length must be positive")
    sd = hd.seifert
    _, chi_orb, _ = orbifold_invariants(sd)
    out = []
    n = 1
    while 2 * math.pi * n <= max_length:
        out.append(OrbitClass("generic", None, n, 2 * math.pi * n, chi_orb / n, real_trace(hd, n)))
        n += 1
    for i, alpha in enumerate(sd.alphas):
        n = 1
        while 2 * math.pi * n / alpha <= max_length:
            if n % alpha:
                out.append(
                    OrbitClass(
                        "exceptional", i, n, 2 * math.pi * n / alpha, Fraction(1, n), real_trace(hd, n, i)
                    )
                )
            n += 1
    out.sort(key=OrbitClass.sort_key)
    return out


def orbit_table_rows(orbits):
    """Rows matching ``ORBIT_CSV_HEADER``."""
    for c in orbits:
        yield (
            c.kind,
            "" if c.fiber is None else c.fiber,
            c.n,
            c.length,
            c.fuller.numerator,
            c.fuller.denominator,
            c.rtr,
        )


# ---------------------------------------------------------------------------
# Z_rho(s) = sum_C ind(C) rtr(rho(C)) l(C)^s as periodic Dirichlet series
# ---------------------------------------------------------------------------

def _periodic_coefficients(hd: HolonomyData):
    """Yield ``(prefactor_base, period, coeffs)`` per family.

    The family sum is ``prefactor_base^s * sum_{n>=1} coeffs[n % period] n^(s-1)``.
    """
    sd = hd.seifert
    _, chi_orb, _ = orbifold_invariants(sd)
    period = lcm(block.x.denominator for block in hd.blocks)
    coeffs = [float(chi_orb) * real_trace(hd, r if r else period) for r in range(period)]
    yield 2 * math.pi, period, coeffs
    for i, alpha in enumerate(sd.alphas):
        dens = [xij.denominator for block in hd.blocks for xij in block.fiber_spectra[i]]
        period = lcm(dens + [alpha])
        coeffs = [
            0.0 if r % alpha == 0 else real_trace(hd, r if r else period, i) for r in range(period)
        ]
        yield 2 * math.pi / alpha, period, coeffs


_BERN_EVEN = [float(b) for b in bernoulli(40)[2::2]]  # B_2, B_4, ..., B_40


def _power_ladder_tail(r: int, q: int, k0: int, e: complex, terms: int):
    """``sum_{k>=k0} (r + q k)^e`` for ``Re(e) < -1`` by Euler-Maclaurin.

    Returns ``(value, remainder_bound)``; the bound is
    ``|B_2p|/(2p)! * int_{k0}^inf |g^(2p)|`` with ``p = terms``.
    """
    u = r + q * k0
    log_u = math.log(u)
    value = -cmath.exp((e + 1.0) * log_u) / (q * (e + 1.0)) + 0.5 * cmath.exp(e * log_u)
    # g^(m)(k0) = q^m e(e-1)...(e-m+1) u^(e-m)
    falling = e  # e(e-1)...(e-2j+2), starts at j=1
    for j in range(1, terms + 1):
        m = 2 * j - 1
        deriv = q**m * falling * cmath.exp((e - m) * log_u)
        value -= _BERN_EVEN[j - 1] / math.factorial(2 * j) * deriv
        falling *= (e - m) * (e - m - 1)
    p2 = 2 * terms
    # falling ran one factor past g^(2p)'s e(e-1)...(e-2p+1)
    integral = q ** (p2 - 1) * abs(falling / (e - p2)) * u ** (e.real - p2 + 1) / (p2 - 1 - e.real)
    bound = abs(_BERN_EVEN[terms - 1]) / math.factorial(p2) * integral
    return value, bound


def _periodic_dirichlet(coeffs, period: int, e: complex, direct_cycles: int):
    """``sum_{n>=1} coeffs[n % period] n^e`` with remainder bound."""
    idx = np.arange(1, direct_cycles * period + 1)
    c = np.asarray(coeffs)[idx % period]
    head = complex((c * np.exp(e * np.log(idx.astype(float)))).sum())
    tail = 0j
    bound = 0.0
    for r in range(1, period + 1):
        coeff = coeffs[r % period]
        if coeff == 0.0:
            continue
        value, rem = _power_ladder_tail(r, period, direct_cycles, e, terms=12)
        tail += coeff * value
        bound += abs(coeff) * rem
    return head + tail, bound


def z_rho_series(hd: HolonomyData, s: complex, tol: float = 1e-10, length_scale: float = 1.0):
    """Dynamical zeta ``Z_rho(s) = sum_C ind(C) rtr(rho(C)) l(C)^s`` for ``Re(s) <= -0.2``.

    Orbits are summed directly over a number of full periods of the
    holonomy; the remaining orbits in each residue class are summed by
    Euler-Maclaurin with a rigorous remainder bound. ``length_scale``
    multiplies every orbit length.

    Returns:
        ``(value, tail_bound)``
    """
    require_valid(hd)
    s = complex(s)
    if s.real > -0.2:
        raise DomainError(f"orbit series needs Re(s) <= -0.2, got {s}")
    e = s - 1.0
    total = 0j
    bound = 0.0
    for base, period, coeffs in _periodic_coefficients(hd):
        prefactor = cmath.exp(s * math.log(length_scale * base))
        cycles = max(2, math.ceil((30.0 + 2.0 * abs(s)) / period))
        while True:
            value, rem = _periodic_dirichlet(coeffs, period, e, cycles)
            rem *= abs(prefactor)
            if rem <= tol / 4 or cycles * period > 10**6:
                break
            cycles *= 2
        total += prefactor * value
        bound += rem
    if bound > tol:
        raise TruncationError(f"orbit series at s={s} reached bound {bound:.3g} > tol {tol}")
    return total, bound


def z_rho_closed(hd: HolonomyData, s: complex) -> MeroValue:
    """Spectral side ``f(s) (kappa(s/2) - kappa(M, rho))``, ``f(s) = Gamma(s) cos(pi s/2)``."""
    require_valid(hd)
    s = complex(s)
    if abs(s - 1.0) < 1e-12:
        raise PoleError("z_rho_closed excludes s = 1", location=1.0)
    f = f_factor(s)
    if f.is_pole:
        k_star = kappa_eval(hd, s / 2).value - kappa_M_rho(hd)
        return MeroValue.pole(f.location, f.residue * k_star)
    kappa = kappa_eval(hd, s / 2)
    if kappa.is_pole:
        return MeroValue.pole(s, f.value * 2.0 * kappa.residue)
    return MeroValue.finite(f.value * (kappa.value - kappa_M_rho(hd)))


def regularized_z_at_zero(hd: HolonomyData, steps=(1e-3, 1e-4)) -> float:
    """``lim_{s->0} (Z_rho(s) + kappa(M, rho)/s)`` from the closed form.

    Symmetric pairs ``s = +-h`` cancel the odd part of the remainder, and the
    two step sizes are Richardson-combined in ``h**2``.

    Since ``Gamma(s) cos(pi s/2) = 1/s - gamma_E + O(s)`` and
    ``kappa(s/2) - kappa(M, rho) = -kappa(M, rho) + kappa'(0) s/2 + O(s^2)``,
    the limit is ``kappa'(0)/2 + gamma_E kappa(M, rho)``; it reduces to
    ``-ln T_RS`` exactly when ``kappa(M, rho) = 0``.
    """
    kappa_m = kappa_M_rho(hd)
    averages = []
    for h in steps:
        pair = [z_rho_closed(hd, sign * h).value.real + kappa_m / (sign * h) for sign in (1.0, -1.0)]
        averages.append(0.5 * (pair[0] + pair[1]))
    factor = (steps[0] / steps[1]) ** 2
    estimate = (factor * averages[1] - averages[0]) / (factor - 1.0)
    residual = abs(estimate - averages[1])
    if residual > 1e-5:
        raise ArithmeticError(
            f"regularised limit not settled: extrapolation moved the estimate by {residual:.3g}"
        )
    return estimate


def fried_z_zero(hd: HolonomyData) -> complex:
    """Fried's ``Z_F(0)`` by Abel summation of ``-sum_C ind(C) tr(rho(C))``.

    Needs ``V^0 = 0`` (no ``x = 0`` block), which forces every ``x_ij != 0``.
    Uses ``sum_{n>=1} z^n/n = -ln(1 - z)`` and, for exceptional orbits,
    ``sum_{alpha !| n} z^n/n = -ln(1 - z) + ln(1 - z^alpha)/alpha``.
    """
    require_valid(hd)
    sd = hd.seifert
    for bi, block in enumerate(hd.blocks):
        if block.x == 0:
            raise DomainError(f"fried_z_zero needs V^0 = 0; block {bi} has x = 0")
        for i, spec in enumerate(block.fiber_spectra):
            if any(v == 0 for v in spec):
                raise DomainError(f"fried_z_zero needs x_ij != 0; block {bi} fiber {i}")
    _, chi_orb, _ = orbifold_invariants(sd)

    def log1m(x: Fraction) -> complex:
        return cmath.log(1.0 - cmath.exp(2j * math.pi * float(x)))

    total = 0j
    for block in hd.blocks:
        total += float(chi_orb) * block.dim * log1m(block.x)
    for i, alpha in enumerate(sd.alphas):
        for block in hd.blocks:
            for xij in block.fiber_spectra[i]:
                total += log1m(xij) - log1m(alpha * xij) / alpha
    return total


def dynamical_theta(hd: HolonomyData, t: float, tol: float = 1e-12):
    """``theta(t) = (pi t)^(-1/2) sum_C l(C) ind(C) rtr(rho(C)) exp(-l(C)^2 / 4t)``.

    Each term is bounded by ``2 pi |chi(Sigma)| dim V e^{-(2 pi n)^2/4t}`` (generic)
    or ``(2 pi/alpha) dim V e^{-(2 pi n/alpha)^2/4t}`` (exceptional), scaled by
    ``(pi t)^(-1/2)``; families are truncated once first-omitted term plus
    Gaussian integral of the envelope is below ``tol`` split across families.

    Returns:
        ``(value, tail_bound)``
    """
    require_valid(hd)
    if not t > 0:
        raise DomainError(f"theta needs t > 0, got {t}")
    t = float(t)
    sd = hd.seifert
    _, chi_orb, _ = orbifold_invariants(sd)
    dim = hd.dim
    norm = 1.0 / math.sqrt(math.pi * t)
    families = [(2 * math.pi, abs(float(chi_orb)) * dim * 2 * math.pi, None)]
    families += [(2 * math.pi / a, dim * 2 * math.pi / a, i) for i, a in enumerate(sd.alphas)]
    share = tol / len(families)

    parts = []
    bound = 0.0
    for step, envelope, fiber in families:
        rate = step * step / (4.0 * t)  # term n ~ exp(-rate n^2)

        def tail(n_last):
            u = n_last + 1
            integral = 0.5 * math.sqrt(math.pi / rate) * math.erfc(u * math.sqrt(rate))
            return norm * envelope * (math.exp(-rate * u * u) + integral)

        n_last = 1
        while tail(n_last) > share:
            n_last += 1
        bound += tail(n_last)
        for n in range(1, n_last + 1):
            length = step * n
            if fiber is None:
                weight = length * float(chi_orb) / n * real_trace(hd, n)
            else:
                if n % sd.alphas[fiber] == 0:
                    continue
                weight = length / n * real_trace(hd, n, fiber)
            parts.append(norm * weight * math.exp(-length * length / (4.0 * t)))
    return math.fsum(parts), bound
