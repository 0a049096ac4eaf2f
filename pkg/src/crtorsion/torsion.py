"""Torsion function in Hurwitz closed form and the Ray-Singer torsion.

Blocks with ``x != 0`` contribute

    dim(V^x) chi(Sigma*) P(2s, x) + sum_{i,j} alpha_i^(-2s) P(2s, x_ij)

with ``P(s, a) = zeta(s, a) + zeta(s, 1 - a)``; the ``x = 0`` block
contributes

    kappa(M, rho) (2 zeta(2s) + 1) + 2 zeta(2s) sum_i dim V^{0,i} (alpha_i^(-2s) - 1)
        + sum_{x_ij != 0} alpha_i^(-2s) P(2s, x_ij).
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

from .seifert import (
    HolonomyBlock,
    HolonomyData,
    dim_fixed_at_fiber,
    kappa_M_rho,
    orbifold_invariants,
    require_valid,
)
from .special_functions import MeroValue, pair_zeta, pair_zeta_deriv0, riemann_zeta

__all__ = [
    "MeroValue",
    "kappa_eval",
    "kappa_block",
    "kappa_residue",
    "numeric_residue",
    "kappa_prime_zero",
    "ray_singer_torsion",
    "POLE_NEIGHBORHOOD",
]

POLE_NEIGHBORHOOD = 1e-10


def _fiber_terms(s2: complex, alphas, block: HolonomyBlock) -> complex:
    total = 0j
    for alpha, spec in zip(alphas, block.fiber_spectra):
        scale = cmath.exp(-s2 * math.log(alpha))
        for xij in spec:
            if xij != 0:
                total += scale * pair_zeta(s2, float(xij))
    return total


def kappa_block(hd: HolonomyData, block: HolonomyBlock, s: complex) -> complex:
    """Contribution of one block to ``kappa(s)`` (finite points only)."""
    sd = hd.seifert
    chi_star, _, _ = orbifold_invariants(sd)
    s2 = 2.0 * complex(s)
    alphas = sd.alphas
    if block.x != 0:
        return block.dim * float(chi_star) * pair_zeta(s2, float(block.x)) + _fiber_terms(
            s2, alphas, block
        )
    zeta2s = riemann_zeta(s2)
    total = kappa_M_rho(hd) * (2.0 * zeta2s + 1.0)
    for i, alpha in enumerate(alphas):
        fixed = dim_fixed_at_fiber(block, i)
        if fixed:
            total += 2.0 * zeta2s * fixed * (cmath.exp(-s2 * math.log(alpha)) - 1.0)
    return total + _fiber_terms(s2, alphas, block)


def kappa_eval(hd: HolonomyData, s: complex) -> MeroValue:
    """Torsion function ``kappa(s)``.

    Within ``1e-10`` of ``s = 1/2`` the pole variant is returned, carrying the
    exact residue ``chi(Sigma) dim V``.
    """
    require_valid(hd)
    s = complex(s)
    if abs(s - 0.5) < POLE_NEIGHBORHOOD:
        return MeroValue.pole(0.5, float(kappa_residue(hd)))
    # fixed block order; fsum on each component keeps the sum reproducible
    parts = [kappa_block(hd, block, s) for block in hd.blocks]
    value = complex(math.fsum(p.real for p in parts), math.fsum(p.imag for p in parts))
    return MeroValue.finite(value)


def kappa_residue(hd: HolonomyData) -> Fraction:
    """Residue of ``kappa`` at ``s = 1/2``: ``chi(Sigma) dim V``."""
    require_valid(hd)
    _, chi_orb, _ = orbifold_invariants(hd.seifert)
    return chi_orb * hd.dim


def numeric_residue(hd: HolonomyData, steps=(1e-2, 1e-3, 1e-4)) -> float:
    """``(s - 1/2) kappa(s)`` extrapolated to ``s = 1/2``.

    Averages the product at ``1/2 + h`` and ``1/2 - h`` (odd powers of ``h``
    cancel) and Richardson-extrapolates in ``h**2`` across ``steps``.
    """
    values = []
    for h in steps:
        avg = 0.0
        for point in (0.5 + h, 0.5 - h):
            avg += (point - 0.5) * kappa_eval(hd, point).value.real
        values.append(avg / 2.0)
    level = values
    power = 1
    while len(level) > 1:
        factor = (steps[0] / steps[1]) ** (2 * power)
        level = [(factor * b - a) / (factor - 1.0) for a, b in zip(level, level[1:])]
        power += 1
    return level[0]


def kappa_prime_zero(hd: HolonomyData) -> float:
    """``kappa'(0)`` from Lerch's formula, block by block.

    ``-kappa'_x(0)/2 = dim chi(Sigma*) ln|1 - e^{2 pi i x}| + sum ln|1 - e^{2 pi i x_ij}|``
    for ``x != 0``; the ``x = 0`` block gives
    ``ln(2 pi) kappa(M, rho) - sum_i dim V^{0,i} ln alpha_i + sum_{x_ij != 0} ln|1 - e^{2 pi i x_ij}|``.
    """
    require_valid(hd)
    sd = hd.seifert
    chi_star, _, _ = orbifold_invariants(sd)
    # accumulate -kappa'(0)/2
    parts = []
    for block in hd.blocks:
        if block.x != 0:
            parts.append(-block.dim * float(chi_star) * pair_zeta_deriv0(float(block.x)))
        else:
            parts.append(math.log(2.0 * math.pi) * kappa_M_rho(hd))
            for i, alpha in enumerate(sd.alphas):
                parts.append(-dim_fixed_at_fiber(block, i) * math.log(alpha))
        for spec in block.fiber_spectra:
            parts.extend(-pair_zeta_deriv0(float(xij)) for xij in spec if xij != 0)
    return -2.0 * math.fsum(parts)


def _one_minus_phase(x: Fraction) -> float:
    return abs(1.0 - cmath.exp(2j * math.pi * float(x)))


def ray_singer_torsion(hd: HolonomyData) -> float:
    """``T_RS = (2 pi)^kappa(M,rho) |det(1 - rho(f)^T)|^chi(Sigma*) prod_i |det(1 - rho(f_i)^T)| / alpha_i^dim V^{0,i}``.

    Determinants are products over eigenphases off the fixed spaces.
    """
    require_valid(hd)
    sd = hd.seifert
    chi_star, _, _ = orbifold_invariants(sd)

    det_generic = 1.0
    for block in hd.blocks:
        if block.x != 0:
            det_generic *= _one_minus_phase(block.x) ** block.dim

    value = (2.0 * math.pi) ** kappa_M_rho(hd) * det_generic ** float(chi_star)
    zero = hd.zero_block
    for i, alpha in enumerate(sd.alphas):
        det_i = 1.0
        for block in hd.blocks:
            for xij in block.fiber_spectra[i]:
                if xij != 0:
                    det_i *= _one_minus_phase(xij)
        fixed = dim_fixed_at_fiber(zero, i) if zero is not None else 0
        value *= det_i / alpha**fixed
    return value
