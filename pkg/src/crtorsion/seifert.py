"""Seifert invariants, holonomy data and the quantities derived from them.

Holonomy is stored as exact rational phase exponents: ``rho(f)`` acts on a
block by ``exp(2 pi i x)`` and ``rho(f_i)`` has eigenvalues
``exp(2 pi i x_ij)``. All exponents live in ``[0, 1)``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import ValidationError

__all__ = [
    "SeifertData",
    "HolonomyBlock",
    "HolonomyData",
    "validate",
    "require_valid",
    "orbifold_invariants",
    "kappa_M_rho",
    "real_trace",
    "dim_fixed_at_fiber",
    "lcm",
    "random_data",
    "trivial_data",
]


def lcm(values) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


@dataclass(frozen=True)
class SeifertData:
    """Integral Seifert invariants ``(g, b; (alpha_1, beta_1), ...)``."""

    genus: int
    b: int
    fibers: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "fibers", tuple((int(a), int(b)) for a, b in self.fibers)
        )

    @property
    def alphas(self) -> tuple[int, ...]:
        return tuple(a for a, _ in self.fibers)


@dataclass(frozen=True)
class HolonomyBlock:
    """One isotypic piece ``V^x``: generic exponent ``x``, dimension and
    per-fiber spectra (``fiber_spectra[i]`` has ``dim`` entries)."""

    x: Fraction
    dim: int
    fiber_spectra: tuple[tuple[Fraction, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(
            self,
            "fiber_spectra",
            tuple(tuple(sorted(Fraction(v) for v in spec)) for spec in self.fiber_spectra),
        )

    def k_values(self, alphas: Sequence[int]) -> list[list[int]]:
        """Integers ``k_ij = alpha_i x_ij - x``."""
        out = []
        for alpha, spec in zip(alphas, self.fiber_spectra):
            row = []
            for xij in spec:
                k = alpha * xij - self.x
                if k.denominator != 1:
                    raise ValidationError([f"congruence alpha*x_ij - x not integral ({k})"])
                row.append(int(k))
            out.append(row)
        return out


@dataclass(frozen=True)
class HolonomyData:
    seifert: SeifertData
    blocks: tuple[HolonomyBlock, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))

    @property
    def dim(self) -> int:
        return sum(block.dim for block in self.blocks)

    @property
    def zero_block(self) -> HolonomyBlock | None:
        for block in self.blocks:
            if block.x == 0:
                return block
        return None


def _check_unit_interval(value: Fraction, where: str, out: list[str]) -> None:
    if not 0 <= value < 1:
        out.append(f"{where} = {value} not in [0,1)")


def validate(hd: HolonomyData) -> list[str]:
    """Return every violated invariant as a message; empty means valid."""
    sd = hd.seifert
    out: list[str] = []
    if sd.genus < 0:
        out.append(f"genus {sd.genus} < 0")
    for i, (alpha, beta) in enumerate(sd.fibers):
        if alpha < 2:
            out.append(f"alpha < 2 at fiber {i}")
        if math.gcd(alpha, beta) != 1:
            out.append(f"gcd(alpha,beta) != 1 at fiber {i}")

    if not hd.blocks:
        out.append("holonomy has no blocks (dim V = 0)")
    seen = set()
    for bi, block in enumerate(hd.blocks):
        _check_unit_interval(block.x, f"block {bi} x", out)
        if block.x in seen:
            out.append(f"duplicate block exponent x = {block.x}")
        seen.add(block.x)
        if block.dim < 1:
            out.append(f"block {bi} dim {block.dim} < 1")
        if len(block.fiber_spectra) != len(sd.fibers):
            out.append(
                f"block {bi} has {len(block.fiber_spectra)} fiber spectra, "
                f"expected {len(sd.fibers)}"
            )
            continue
        for i, ((alpha, _), spec) in enumerate(zip(sd.fibers, block.fiber_spectra)):
            if len(spec) != block.dim:
                out.append(f"block {bi} fiber {i} spectrum has {len(spec)} entries, expected {block.dim}")
            for j, xij in enumerate(spec):
                _check_unit_interval(xij, f"block {bi} x[{i},{j}]", out)
                if alpha >= 1 and (alpha * xij - block.x).denominator != 1:
                    out.append(
                        f"congruence violated at block {bi} fiber {i} entry {j}: "
                        f"{alpha}*{xij} - {block.x} not an integer"
                    )
                if block.x != 0 and xij == 0:
                    out.append(f"block {bi} fiber {i} entry {j}: x_ij = 0 but x != 0")
    return out


def require_valid(hd: HolonomyData) -> HolonomyData:
    problems = validate(hd)
    if problems:
        raise ValidationError(problems)
    return hd


def orbifold_invariants(sd: SeifertData) -> tuple[Fraction, Fraction, Fraction]:
    """``(chi(Sigma*), chi(Sigma), d(L))`` as exact rationals.

    ``chi(Sigma*) = 2 - 2g - |I|`` is the punctured-surface Euler
    characteristic, ``chi(Sigma)`` adds ``1/alpha_i`` per cone point and
    ``d(L) = b + sum beta_i / alpha_i`` is the rational degree.
    """
    chi_star = Fraction(2 - 2 * sd.genus - len(sd.fibers))
    chi_orb = chi_star + sum((Fraction(1, a) for a, _ in sd.fibers), Fraction(0))
    degree = sd.b + sum((Fraction(b, a) for a, b in sd.fibers), Fraction(0))
    return chi_star, chi_orb, degree


def dim_fixed_at_fiber(block: HolonomyBlock, i: int) -> int:
    """Multiplicity of the eigenvalue 1 of ``rho(f_i)`` on the block."""
    return sum(1 for v in block.fiber_spectra[i] if v == 0)


def kappa_M_rho(hd: HolonomyData) -> int:
    """Cohomological term ``2 dim H^0 - dim H^1``.

    Only the ``x = 0`` block contributes:
    ``dim(V^0) chi(Sigma*) + sum_i dim(V^{0,i})``.
    """
    block = hd.zero_block
    if block is None:
        return 0
    chi_star, _, _ = orbifold_invariants(hd.seifert)
    total = block.dim * chi_star + sum(
        dim_fixed_at_fiber(block, i) for i in range(len(hd.seifert.fibers))
    )
    return int(total)


def _cos_turns(value: Fraction) -> float:
    # cos(2 pi value) with the argument reduced exactly first
    return math.cos(2.0 * math.pi * float(value % 1))


def real_trace(hd: HolonomyData, n: int, fiber: int | None = None) -> float:
    """Real part of the trace of ``rho(f^n)``, or of ``rho(f_i^n)`` when
    ``fiber=i`` is given."""
    if n < 1:
        raise ValueError("orbit multiplicity n must be >= 1")
    if fiber is None:
        return math.fsum(block.dim * _cos_turns(n * block.x) for block in hd.blocks)
    return math.fsum(
        _cos_turns(n * xij) for block in hd.blocks for xij in block.fiber_spectra[fiber]
    )


def trivial_data(genus: int, b: int, fibers=(), dim: int = 1) -> HolonomyData:
    """Trivial representation of dimension ``dim`` on the given Seifert data."""
    sd = SeifertData(genus, b, tuple(fibers))
    block = HolonomyBlock(Fraction(0), dim, tuple((Fraction(0),) * dim for _ in sd.fibers))
    return HolonomyData(sd, (block,))


_EXPONENT_POOL = tuple(
    Fraction(p, q) for q in (1, 2, 3, 4, 5, 6) for p in range(q) if math.gcd(p, q) == 1
)


def random_data(
    seed,
    *,
    max_genus: int = 2,
    max_fibers: int = 3,
    max_alpha: int = 6,
    max_blocks: int = 3,
    max_dim: int = 2,
    acyclic: bool = False,
) -> HolonomyData:
    """Random valid Seifert + holonomy data, deterministic in ``seed``.

    With ``acyclic=True`` no block has ``x = 0`` (hence every ``x_ij`` is
    nonzero as well).
    """
    rng = random.Random(seed)
    fibers = []
    for _ in range(rng.randint(0, max_fibers)):
        alpha = rng.randint(2, max_alpha)
        beta = rng.choice([b for b in range(1, alpha) if math.gcd(alpha, b) == 1])
        fibers.append((alpha, beta))
    sd = SeifertData(rng.randint(0, max_genus), rng.randint(-3, 3), tuple(fibers))

    pool = [x for x in _EXPONENT_POOL if not (acyclic and x == 0)]
    xs = rng.sample(pool, rng.randint(1, min(max_blocks, len(pool))))
    blocks = []
    for x in xs:
        m = rng.randint(1, max_dim)
        spectra = []
        for alpha, _ in fibers:
            spectra.append(tuple((x + rng.randrange(alpha)) / alpha for _ in range(m)))
        blocks.append(HolonomyBlock(x, m, tuple(spectra)))
    return HolonomyData(sd, tuple(blocks))
