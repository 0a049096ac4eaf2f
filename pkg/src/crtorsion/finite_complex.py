"""Torsion of finite cochain complexes with the standard inner products.

A complex ``E_0 -> E_1 -> ... -> E_m`` is stored as its dimension vector and
the matrices ``d_k`` of shape ``(N_{k+1}, N_k)``. Three routes to the torsion
are provided:

* ``torsion_canonical``: product over degrees of the nonzero singular values
  of ``d_k`` raised to ``(-1)^(k+1)`` (norm of the canonical element of the
  determinant line of the harmonic complement);
* ``torsion_via_laplacians(c, "derham")``: ``prod det'(Delta_k)^((-1)^k k / 2)``
  with ``Delta = d d* + d* d``;
* ``torsion_via_laplacians(c, ("contact", n))``: ``prod det'(Delta_k)^((-1)^k w(k) / 4)``
  with the uniformly fourth-order Laplacian and weights ``w(k) = k`` for
  ``k <= n``, ``k + 1`` above.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import IllConditionedError

__all__ = [
    "FiniteComplex",
    "random_complex",
    "random_acyclic_dims",
    "cohomology_dims",
    "torsion_canonical",
    "torsion_via_laplacians",
    "laplacians",
    "contact_weights",
    "eigen_cluster_euler_counts",
    "rank_threshold",
]

_REL_THRESHOLD = 2.0**-40


@dataclass
class FiniteComplex:
    dims: tuple[int, ...]
    differentials: list[np.ndarray]
    middle: int | None = None

    def __post_init__(self):
        self.dims = tuple(int(n) for n in self.dims)
        self.differentials = [np.asarray(d, dtype=float).reshape(self.dims[k + 1], self.dims[k])
                              for k, d in enumerate(self.differentials)]
        if len(self.differentials) != len(self.dims) - 1:
            raise ValueError("need one differential between each pair of consecutive degrees")
        if self.middle is not None and len(self.dims) != 2 * self.middle + 2:
            raise ValueError(f"middle degree {self.middle} needs length {2 * self.middle + 2}")

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def square_defect(self) -> float:
        """Largest Frobenius norm of ``d_{k+1} d_k``."""
        worst = 0.0
        for a, b in zip(self.differentials, self.differentials[1:]):
            worst = max(worst, float(np.linalg.norm(b @ a)))
        return worst

    def conjugated(self, bases) -> FiniteComplex:
        """Complex in new bases: ``d_k -> B_{k+1} d_k B_k^{-1}``."""
        diffs = [bases[k + 1] @ d @ np.linalg.inv(bases[k]) for k, d in enumerate(self.differentials)]
        return FiniteComplex(self.dims, diffs, self.middle)

    def scaled(self, k: int, factor: float) -> FiniteComplex:
        diffs = [d.copy() for d in self.differentials]
        diffs[k] = diffs[k] * factor
        return FiniteComplex(self.dims, diffs, self.middle)

    def to_json(self) -> str:
        payload = {
            "dims": list(self.dims),
            "differentials": [d.tolist() for d in self.differentials],
            "middle": self.middle,
        }
        return json.dumps(payload)

    @classmethod
    def from_json(cls, text: str) -> FiniteComplex:
        payload = json.loads(text)
        return cls(tuple(payload["dims"]), [np.array(d, dtype=float) for d in payload["differentials"]],
                   payload.get("middle"))


def _ranks_for(dims, cohomology):
    ranks = []
    previous = 0
    for k, (n, h) in enumerate(zip(dims, cohomology)):
        r = n - h - previous
        if r < 0:
            raise ValueError(f"infeasible: degree {k} has dim {n} < rank(d_{k-1}) + h^{k} = {previous + h}")
        ranks.append(r)
        previous = r
    if ranks[-1] != 0:
        raise ValueError(
            f"infeasible: Euler characteristic of dims {tuple(dims)} does not match cohomology {tuple(cohomology)}"
        )
    return ranks[:-1]


def random_acyclic_dims(rng, length: int, max_dim: int = 8) -> tuple[int, ...]:
    """Dimension vector of an acyclic complex with ``length`` degrees, each ``<= max_dim``."""
    if length < 2:
        raise ValueError("an acyclic nonzero complex needs at least two degrees")
    ranks = [int(r) for r in rng.integers(1, max_dim // 2 + 1, size=length - 1)]
    padded = [0] + ranks + [0]
    return tuple(padded[k] + padded[k + 1] for k in range(length))


def random_complex(seed, dims, cohomology=None, middle=None) -> FiniteComplex:
    """Random complex with prescribed cohomology (acyclic by default).

    Each ``d_k`` is a random rank-``r_k`` map projected onto the orthogonal
    complement of ``range(d_{k-1})``, then its nonzero singular values are
    resampled log-uniformly in ``[0.1, 10]``.
    """
    dims = tuple(int(n) for n in dims)
    cohomology = tuple(cohomology) if cohomology is not None else (0,) * len(dims)
    if len(cohomology) != len(dims):
        raise ValueError("cohomology vector must match dims")
    ranks = _ranks_for(dims, cohomology)
    rng = np.random.default_rng(seed)

    diffs = []
    image = np.zeros((dims[0], 0))
    for k, r in enumerate(ranks):
        src, dst = dims[k], dims[k + 1]
        if r == 0:
            d = np.zeros((dst, src))
        else:
            q, _ = np.linalg.qr(image) if image.shape[1] else (np.zeros((src, 0)), None)
            proj = np.eye(src) - q @ q.T
            raw = rng.standard_normal((dst, r)) @ rng.standard_normal((r, src)) @ proj
            u, sv, vt = np.linalg.svd(raw)
            new_sv = np.exp(rng.uniform(np.log(0.1), np.log(10.0), size=r))
            d = (u[:, :r] * new_sv) @ vt[:r]
        diffs.append(d)
        image = _column_basis(d)
    c = FiniteComplex(dims, diffs, middle)
    got = cohomology_dims(c)
    if tuple(got) != cohomology:
        raise ArithmeticError(f"generator produced cohomology {got}, wanted {cohomology}")
    return c


def _column_basis(d: np.ndarray) -> np.ndarray:
    if d.size == 0:
        return np.zeros((d.shape[0], 0))
    u, sv, _ = np.linalg.svd(d)
    rank = int((sv > rank_threshold(d, sv)).sum())
    return u[:, :rank]


def rank_threshold(d: np.ndarray, sv=None) -> float:
    if sv is None:
        sv = np.linalg.svd(d, compute_uv=False)
    top = float(sv[0]) if len(sv) else 0.0
    return max(d.shape) * top * _REL_THRESHOLD


def _singular_values(d: np.ndarray, strict: bool) -> np.ndarray:
    """Nonzero singular values of ``d`` under the rank threshold."""
    if d.size == 0:
        return np.zeros(0)
    sv = np.linalg.svd(d, compute_uv=False)
    if not len(sv) or sv[0] == 0.0:
        return np.zeros(0)
    thr = rank_threshold(d, sv)
    near = (sv > thr / 10.0) & (sv < thr * 10.0)
    if near.any():
        msg = f"singular value within a factor 10 of rank threshold {thr:.3g}"
        if strict:
            raise IllConditionedError(msg)
        warnings.warn(msg, RuntimeWarning, stacklevel=3)
    return sv[sv > thr]


def cohomology_dims(c: FiniteComplex) -> list[int]:
    """``dim ker d_k - rank d_{k-1}`` per degree."""
    ranks = [len(_singular_values(d, strict=False)) for d in c.differentials]
    out = []
    for k, n in enumerate(c.dims):
        r_out = ranks[k] if k < len(ranks) else 0
        r_in = ranks[k - 1] if k > 0 else 0
        out.append(n - r_out - r_in)
    return out


def torsion_canonical(c: FiniteComplex) -> float:
    """Torsion from generators of ``(ker d)^perp``: ``prod_k (prod sigma(d_k))^((-1)^(k+1))``."""
    log_tau = 0.0
    for k, d in enumerate(c.differentials):
        sv = _singular_values(d, strict=True)
        log_tau += (-1) ** (k + 1) * float(np.log(sv).sum())
    return float(np.exp(log_tau))


def contact_weights(n: int) -> list[int]:
    return [k if k <= n else k + 1 for k in range(2 * n + 2)]


def laplacians(c: FiniteComplex, weights="derham") -> list[np.ndarray]:
    """Per-degree Laplacians; ``weights`` is ``"derham"`` or ``("contact", n)``."""
    d = c.differentials
    top = c.top

    def down(k):  # d_{k-1} d_{k-1}^*  on E_k
        if k == 0:
            return np.zeros((c.dims[0], c.dims[0]))
        return d[k - 1] @ d[k - 1].T

    def up(k):  # d_k^* d_k on E_k
        if k == top:
            return np.zeros((c.dims[k], c.dims[k]))
        return d[k].T @ d[k]

    if weights == "derham":
        return [down(k) + up(k) for k in range(top + 1)]

    kind, n = weights
    if kind != "contact":
        raise ValueError(f"unknown weights {weights!r}")
    if top != 2 * n + 1:
        raise ValueError(f"contact weighting with middle {n} needs complex length {2 * n + 2}")
    out = []
    for k in range(top + 1):
        lo, hi = down(k), up(k)
        if k == n:
            out.append(lo @ lo + hi)
        elif k == n + 1:
            out.append(lo + hi @ hi)
        else:
            full = lo + hi
            out.append(full @ full)
    return out


def _log_det_prime(lap: np.ndarray) -> float:
    if lap.size == 0:
        return 0.0
    ev = np.linalg.eigvalsh((lap + lap.T) / 2.0)
    top = float(np.abs(ev).max()) if len(ev) else 0.0
    if top == 0.0:
        return 0.0
    thr = lap.shape[0] * top * _REL_THRESHOLD
    near = (np.abs(ev) > thr / 10.0) & (np.abs(ev) < thr * 10.0)
    if near.any():
        raise IllConditionedError(f"eigenvalue within a factor 10 of threshold {thr:.3g}")
    return float(np.log(ev[ev > thr]).sum())


def torsion_via_laplacians(c: FiniteComplex, weights="derham") -> float:
    """Weighted product of ``det'`` of the Laplacians.

    ``"derham"``: ``prod det'(Delta_k)^((-1)^k k / 2)`` (the inverse of the
    Reidemeister-Franz torsion). ``("contact", n)``: fourth-order
    Laplacians with exponents ``(-1)^k w(k) / 4``.
    """
    laps = laplacians(c, weights)
    if weights == "derham":
        exps = [(-1) ** k * k / 2.0 for k in range(c.top + 1)]
    else:
        exps = [(-1) ** k * w / 4.0 for k, w in enumerate(contact_weights(weights[1]))]
    return float(np.exp(sum(e * _log_det_prime(lap) for e, lap in zip(exps, laps))))


def eigen_cluster_euler_counts(c: FiniteComplex, weights, rel_gap: float = 1e-7) -> dict[float, int]:
    """Alternating eigenspace dimension count ``sum (-1)^k dim E^k_mu`` per nonzero eigenvalue cluster."""
    clusters: list[list[float]] = []
    counts: list[int] = []
    for k, lap in enumerate(laplacians(c, weights)):
        if lap.size == 0:
            continue
        ev = np.linalg.eigvalsh((lap + lap.T) / 2.0)
        top = float(np.abs(ev).max()) or 1.0
        for mu in ev:
            if mu <= lap.shape[0] * top * _REL_THRESHOLD:
                continue
            for idx, cl in enumerate(clusters):
                if abs(mu - cl[0]) <= rel_gap * max(abs(mu), abs(cl[0])):
                    counts[idx] += (-1) ** k
                    break
            else:
                clusters.append([float(mu)])
                counts.append((-1) ** k)
    return {cl[0]: cnt for cl, cnt in zip(clusters, counts)}
