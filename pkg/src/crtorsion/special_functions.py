"""Hurwitz zeta, the Gamma-cosine factor and related helpers in binary64.

The Hurwitz zeta function is evaluated by Euler-Maclaurin summation: the
first ``N`` terms are summed directly, with ``N + a >= max(10, |s|)``, and
the tail is replaced by its integral plus Bernoulli corrections through
``B_24``. Far into the left half-plane (``Re(s) <= -3``) the direct head
cancels catastrophically, so there the Fourier series of Hurwitz's formula
is summed instead; its terms decay like ``n**(Re(s) - 1)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import bernoulli, comb, loggamma

from .errors import DomainError, PoleError

__all__ = [
    "MeroValue",
    "hurwitz_zeta",
    "riemann_zeta",
    "pair_zeta",
    "pair_zeta_deriv0",
    "f_factor",
]

# B_2, B_4, ..., B_24
_BERNOULLI = (
    Fraction(1, 6),
    Fraction(-1, 30),
    Fraction(1, 42),
    Fraction(-1, 30),
    Fraction(5, 66),
    Fraction(-691, 2730),
    Fraction(7, 6),
    Fraction(-3617, 510),
    Fraction(43867, 798),
    Fraction(-174611, 330),
    Fraction(854513, 138),
    Fraction(-236364091, 2730),
)
_EM_COEFFS = tuple(
    float(b / math.factorial(2 * k)) for k, b in enumerate(_BERNOULLI, start=1)
)

POLE_RADIUS = 1e-12
FOURIER_HALF_PLANE = -2.0


@dataclass(frozen=True)
class MeroValue:
    """Value of a meromorphic function at a point: finite, or a pole marker."""

    kind: str
    value: complex | None = None
    location: complex | None = None
    residue: complex | None = None

    def __post_init__(self):
        if self.kind == "finite":
            if self.value is None or self.location is not None or self.residue is not None:
                raise ValueError("finite MeroValue carries only a value")
        elif self.kind == "pole":
            if self.value is not None or self.location is None or self.residue is None:
                raise ValueError("pole MeroValue carries location and residue")
        else:
            raise ValueError(f"unknown MeroValue kind {self.kind!r}")

    @classmethod
    def finite(cls, value) -> MeroValue:
        return cls("finite", value=complex(value))

    @classmethod
    def pole(cls, location, residue) -> MeroValue:
        return cls("pole", location=complex(location), residue=complex(residue))

    @property
    def is_pole(self) -> bool:
        return self.kind == "pole"


def hurwitz_zeta(s: complex, a: float) -> complex:
    """Analytic continuation of ``sum_{n>=0} (n + a)**(-s)`` for ``a`` in (0, 1].

    Raises:
        PoleError: if ``|s - 1| < 1e-12`` (residue 1).
        DomainError: if ``a`` is outside (0, 1].
    """
    s = complex(s)
    a = float(a)
    if not 0.0 < a <= 1.0:
        raise DomainError(f"hurwitz_zeta needs a in (0, 1], got {a}")
    if abs(s - 1.0) < POLE_RADIUS:
        raise PoleError("hurwitz_zeta has a simple pole at s=1", location=1.0, residue=1.0)
    if s.imag == 0.0 and s.real.is_integer() and -_BERNOULLI_MAX <= s.real <= 0.0:
        m = 1 - int(s.real)
        return complex(-_bernoulli_poly(m, a) / m)
    if s.real <= FOURIER_HALF_PLANE:
        return _hurwitz_fourier(s, a)

    # fewer direct terms for Re(s) < 0 limit the cancellation in the head sum
    m = max(10.0, abs(s)) if s.real >= 0 else max(6.0, abs(s) + 2.0)
    n_direct = max(0, math.ceil(m - a))
    big = n_direct + a

    if n_direct:
        base = np.arange(n_direct, dtype=float) + a
        head = np.exp(-s * np.log(base)).sum()
    else:
        head = 0.0

    log_big = math.log(big)
    tail = cmath.exp((1.0 - s) * log_big) / (s - 1.0) + 0.5 * cmath.exp(-s * log_big)
    # running term: s(s+1)...(s+2k-2) * big**(-s-2k+1)
    rising = s
    power = cmath.exp(-(s + 1.0) * log_big)
    inv_big_sq = 1.0 / (big * big)
    for k, coeff in enumerate(_EM_COEFFS, start=1):
        tail += coeff * rising * power
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        power *= inv_big_sq
    return complex(head + tail)


# the Fourier series only converges like n^-3 on Re(s) = -2
_BERNOULLI_MAX = 2


def _bernoulli_poly(m: int, a: float) -> float:
    k = np.arange(m + 1)
    return float(np.sum(comb(m, k) * bernoulli(m)[: m + 1] * a ** (m - k)))


def _hurwitz_fourier(s: complex, a: float) -> complex:
    # zeta(s,a) = 2 Gamma(1-s) / (2 pi)^(1-s)
    #             * [sin(pi s/2) sum cos(2 pi a n)/n^(1-s) + cos(pi s/2) sum sin(2 pi a n)/n^(1-s)]
    sigma = s.real
    prefactor = 2.0 * cmath.exp(loggamma(1.0 - s) - (1.0 - s) * math.log(2.0 * math.pi))
    # |trig factor| <= cosh(pi Im s / 2); tail of sum n^(sigma-1) beyond N is <= N^sigma / |sigma|
    scale = abs(prefactor) * math.cosh(math.pi * s.imag / 2.0) / -sigma
    target = 1e-15 * max(1.0, abs(prefactor))
    n_terms = min(1_000_000, math.ceil((target / scale) ** (1.0 / sigma)) + 2)
    n = np.arange(1, n_terms + 1, dtype=float)
    weight = np.exp((s - 1.0) * np.log(n))
    phase = 2.0 * math.pi * ((a * n) % 1.0)
    cos_sum = (np.cos(phase) * weight).sum()
    sin_sum = (np.sin(phase) * weight).sum()
    half = math.pi * s / 2.0
    return complex(prefactor * (cmath.sin(half) * cos_sum + cmath.cos(half) * sin_sum))


def riemann_zeta(s: complex) -> complex:
    """Riemann zeta as ``hurwitz_zeta(s, 1)``."""
    return hurwitz_zeta(s, 1.0)


def pair_zeta(s: complex, x: float) -> complex:
    """``zeta(s, x) + zeta(s, 1 - x)`` for ``x`` in (0, 1).

    ``x`` handed in as exactly 1 is tolerated; the second term then uses
    ``a = 1`` rather than the excluded ``a = 0``.
    """
    x = float(x)
    if not 0.0 < x <= 1.0:
        raise DomainError(f"pair_zeta needs x in (0, 1), got {x}")
    if abs(complex(s) - 1.0) < POLE_RADIUS:
        raise PoleError("pair_zeta has a simple pole at s=1", location=1.0, residue=2.0)
    other = 1.0 - x if x < 1.0 else 1.0
    return hurwitz_zeta(s, x) + hurwitz_zeta(s, other)


def pair_zeta_deriv0(x: float) -> float:
    """s-derivative of ``pair_zeta(s, x)`` at ``s = 0``.

    Lerch's formula together with Euler reflection collapses this to
    ``-ln(2 sin(pi x))``.
    """
    x = float(x)
    if not 0.0 < x < 1.0:
        raise DomainError(f"pair_zeta_deriv0 needs x in (0, 1), got {x}")
    return -math.log(2.0 * math.sin(math.pi * x))


def _nearest_nonpositive_even(s: complex) -> int | None:
    if s.real > 0.5:
        return None
    k = round(s.real / 2.0)
    if k > 0:
        return None
    if abs(s - 2 * k) < POLE_RADIUS:
        return 2 * k
    return None


def f_factor(s: complex) -> MeroValue:
    """``Gamma(s) cos(pi s / 2)``.

    Poles sit at 0, -2, -4, ... with residue ``(-1)**k / (2k)!`` at ``-2k``.
    The Gamma poles at negative odd integers cancel against the cosine zeros;
    for ``Re(s) < 1/2`` the reflection form ``pi / (2 sin(pi s/2) Gamma(1-s))``
    is used, which is smooth there and avoids the cancellation.
    """
    s = complex(s)
    pole = _nearest_nonpositive_even(s)
    if pole is not None:
        k = -pole // 2
        return MeroValue.pole(pole, (-1) ** k / math.factorial(2 * k))
    if s.real < 0.5:
        value = math.pi / (2.0 * cmath.sin(math.pi * s / 2.0) * cmath.exp(loggamma(1.0 - s)))
    else:
        value = cmath.exp(loggamma(s)) * cmath.cos(math.pi * s / 2.0)
    return MeroValue.finite(value)
