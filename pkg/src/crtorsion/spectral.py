"""Fourier modes of ``iT``, their holomorphic genus, and the direct spectral sums.

On the block ``V^x`` the Reeb field has eigenvalues ``lambda = -(n + x)``,
``n`` in Z. Each mode carries the integer genus

    chi(W_lambda) = dim(V^x) chi(Sigma*) + sum_{i,j} delta(n, i, j)

where ``delta(n, i, j) = 1`` iff ``alpha_i`` divides ``n - k_ij``. The
fractional-part form of Riemann-Roch-Kawasaki is evaluated alongside as an
internal consistency check.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np
from scipy.special import erfc

from .errors import DomainError, TruncationError
from .seifert import (
    HolonomyBlock,
    HolonomyData,
    SeifertData,
    kappa_M_rho,
    lcm,
    orbifold_invariants,
    require_valid,
)

__all__ = [
    "ModeGenus",
    "delta",
    "chi_genus",
    "chi_genus_fractional",
    "degree_V_lambda",
    "modes",
    "tail_constant",
    "kappa_direct_series",
    "spectral_heat_trace",
    "MODE_BUDGET",
]

MODE_BUDGET = 10_000_000


class ModeGenus:
    """A single Fourier mode ``(x, n)`` with ``lambda = -(n + x)`` and its genus."""

    __slots__ = ("x", "n", "lam", "chi")

    def __init__(self, x: Fraction, n: int, chi: int):
        self.x = x
        self.n = n
        self.lam = -(n + x)
        self.chi = chi

    def __repr__(self):
        return f"ModeGenus(x={self.x}, n={self.n}, lambda={self.lam}, chi={self.chi})"


def delta(n: int, x_ij: Fraction, x: Fraction, alpha: int) -> int:
    """1 if ``n - k_ij`` is divisible by ``alpha``, where ``k_ij = alpha x_ij - x``."""
    k = alpha * Fraction(x_ij) - Fraction(x)
    if k.denominator != 1:
        raise DomainError(f"congruence violated: {alpha}*{x_ij} - {x} = {k} is not an integer")
    return int((n - int(k)) % alpha == 0)


def _frac(q: Fraction) -> Fraction:
    return q - math.floor(q)


def chi_genus_fractional(sd: SeifertData, block: HolonomyBlock, n: int) -> int:
    """Genus from the fractional-part (Kawasaki) expression, with ``beta_i``."""
    total = Fraction(block.dim * (2 - 2 * sd.genus))
    for (alpha, beta), ks in zip(sd.fibers, block.k_values(sd.alphas)):
        for k in ks:
            total -= _frac(Fraction((-n + k) * beta, alpha)) + _frac(Fraction((n - k) * beta, alpha))
    if total.denominator != 1:
        raise ArithmeticError(f"fractional-part genus {total} is not an integer")
    return int(total)


@lru_cache(maxsize=None)
def _chi_cached(sd: SeifertData, block: HolonomyBlock, residue: int) -> int:
    chi_star, _, _ = orbifold_invariants(sd)
    value = block.dim * chi_star
    for (alpha, _), spec in zip(sd.fibers, block.fiber_spectra):
        value += sum(delta(residue, xij, block.x, alpha) for xij in spec)
    check = chi_genus_fractional(sd, block, residue)
    if value != check:
        raise ArithmeticError(
            f"genus mismatch at n={residue}: delta form {value}, fractional form {check}"
        )
    return int(value)


def chi_genus(sd: SeifertData, block: HolonomyBlock, n: int) -> int:
    """Integer genus ``chi(W_lambda)`` of the mode ``(block.x, n)``.

    Periodic in ``n`` with period ``lcm(alpha_i)``; cached per residue.
    """
    period = lcm(sd.alphas)
    return _chi_cached(sd, block, n % period)


def degree_V_lambda(sd: SeifertData, block: HolonomyBlock, n: int) -> Fraction:
    """Rational degree ``dim(V^x) lambda d(L)`` of the mode bundle."""
    _, _, degree = orbifold_invariants(sd)
    return block.dim * (-(n + block.x)) * degree


def modes(hd: HolonomyData, max_abs_lambda: float):
    """All nonzero modes with ``|lambda| <= max_abs_lambda``, ordered by ``|lambda|``."""
    out = []
    for block in hd.blocks:
        x = block.x
        lo = math.ceil(-max_abs_lambda - x)
        hi = math.floor(max_abs_lambda - x)
        for n in range(lo, hi + 1):
            if n == 0 and x == 0:
                continue
            out.append(ModeGenus(x, n, chi_genus(hd.seifert, block, n)))
    out.sort(key=lambda m: (abs(m.lam), m.lam, m.x))
    return out


def tail_constant(hd: HolonomyData) -> Fraction:
    """Uniform bound ``C >= |chi|`` per unit-spaced mode ladder, summed over blocks."""
    chi_star, _, _ = orbifold_invariants(hd.seifert)
    nfib = len(hd.seifert.fibers)
    return sum((block.dim * (abs(chi_star) + nfib) for block in hd.blocks), Fraction(0))


def _block_arrays(sd: SeifertData, block: HolonomyBlock, max_abs_lambda: float):
    """Vectorised ``(n, |lambda|, chi)`` over the block's modes in range."""
    x = block.x
    lo = math.ceil(-max_abs_lambda - x)
    hi = math.floor(max_abs_lambda - x)
    n = np.arange(lo, hi + 1, dtype=np.int64)
    if x == 0:
        n = n[n != 0]
    period = lcm(sd.alphas)
    table = np.array([chi_genus(sd, block, r) for r in range(period)], dtype=np.int64)
    chi = table[n % period]
    lam = np.abs(n.astype(float) + float(x))
    return n, lam, chi


def _ladder_tail(cutoff: float, sigma2: float) -> float:
    # sum over both sides of a unit-spaced ladder beyond cutoff of u**(-sigma2)
    return 2.0 * (cutoff ** (-sigma2) + cutoff ** (1.0 - sigma2) / (sigma2 - 1.0))


def kappa_direct_series(hd: HolonomyData, s: complex, tol: float = 1e-8):
    """Direct Dirichlet mode sum ``sum chi / lambda^(2s) + kappa(M, rho)``.

    Truncates at ``|lambda| <= Lambda`` with ``Lambda`` chosen so that the
    rigorous tail bound ``2 C (Lambda^(-2 sigma) + Lambda^(1 - 2 sigma) / (2 sigma - 1))``
    is at most ``tol`` (``sigma = Re s``).

    Returns:
        ``(value, tail_bound)``
    """
    require_valid(hd)
    s = complex(s)
    if s.real < 0.75:
        raise DomainError(f"direct series needs Re(s) >= 0.75, got {s}")
    sd = hd.seifert
    sigma2 = 2.0 * s.real
    const = float(tail_constant(hd))

    cutoff = 1.0
    if const > 0:
        # the integral term dominates; solve it, then nudge up until the bound holds
        cutoff = max(1.0, (2.0 * const / (tol * (sigma2 - 1.0))) ** (1.0 / (sigma2 - 1.0)))
        while const * _ladder_tail(cutoff, sigma2) > tol:
            cutoff *= 1.05
    n_modes = 2 * cutoff * len(hd.blocks)
    if n_modes > MODE_BUDGET:
        raise TruncationError(
            f"tol={tol} at s={s} needs about {n_modes:.3g} modes (budget {MODE_BUDGET})"
        )
    bound = const * _ladder_tail(cutoff, sigma2) if const > 0 else 0.0

    total = complex(kappa_M_rho(hd))
    for block in hd.blocks:
        _, lam, chi = _block_arrays(sd, block, cutoff)
        keep = chi != 0
        terms = chi[keep] * np.exp(-2.0 * s * np.log(lam[keep]))
        total += complex(terms.sum())
    return total, bound


def _heat_cutoff(t: float, const: float, tol: float) -> float:
    cutoff = 1.0
    while const * _gauss_tail(cutoff, t) > tol:
        cutoff *= 1.25
    return cutoff


def _gauss_tail(cutoff: float, t: float) -> float:
    # both sides: first term beyond the cutoff plus the Gaussian integral
    return 2.0 * (math.exp(-t * cutoff * cutoff) + 0.5 * math.sqrt(math.pi / t) * erfc(cutoff * math.sqrt(t)))


def spectral_heat_trace(hd: HolonomyData, t: float, tol: float = 1e-12, dps: int | None = None):
    """Torsion heat trace ``kappa(M, rho) + sum_{lambda != 0} chi e^{-t lambda^2}``.

    With ``dps`` set, the mode sum is carried out in ``mpmath`` at that many
    decimal digits, ``tol`` is replaced by ``10^-(dps-5)`` and both value and
    bound are returned as ``mpf``; this is what resolves the exponentially
    small small-time remainder.

    Returns:
        ``(value, tail_bound)``
    """
    require_valid(hd)
    if not t > 0:
        raise DomainError(f"heat trace needs t > 0, got {t}")
    t = float(t)
    sd = hd.seifert
    const = float(tail_constant(hd))
    if dps is not None:
        return _heat_trace_mp(hd, t, const, dps)
    cutoff = _heat_cutoff(t, const, tol) if const > 0 else 1.0
    bound = const * _gauss_tail(cutoff, t) if const > 0 else 0.0

    parts = [float(kappa_M_rho(hd))]
    for block in hd.blocks:
        _, lam, chi = _block_arrays(sd, block, cutoff)
        parts.extend((chi * np.exp(-t * lam * lam)).tolist())
    return math.fsum(parts), bound


def _heat_trace_mp(hd: HolonomyData, t: float, const: float, dps: int):
    # tail <= const (2 + sqrt(pi/t)) e^{-t Lambda^2}; aim for 10^-(dps-5), in log space
    target = (dps - 5) * math.log(10.0)
    if const > 0:
        cutoff = math.sqrt((math.log(const * (2.0 + math.sqrt(math.pi / t))) + target) / t) + 1.0
    else:
        cutoff = 1.0
    with mpmath.workdps(dps):
        mt = mpmath.mpf(t)
        total = mpmath.mpf(kappa_M_rho(hd))
        for block in hd.blocks:
            n_vals, _, chi = _block_arrays(hd.seifert, block, cutoff)
            x = mpmath.mpf(block.x.numerator) / block.x.denominator
            for n, c in zip(n_vals.tolist(), chi.tolist()):
                if c:
                    total += c * mpmath.exp(-mt * (n + x) ** 2)
        bound = mpmath.mpf(10) ** (-(dps - 5)) if const > 0 else mpmath.mpf(0)
        return +total, bound
