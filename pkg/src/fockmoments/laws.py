"""Limit laws and classical references: arcsine, Gaussian, moment validity.

The arcsine law on [-sqrt(2), sqrt(2)] is the weak limit of canonically
scaled number-state position distributions.  Its even moments are
C(2m, m) / 2^m and it coincides with the position distribution of a
classical harmonic oscillator of amplitude sqrt(2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .fock import ExactScalar, as_fraction, fraction_str

SUPPORT_RADIUS = math.sqrt(2.0)


def arcsine_moment(order: int) -> Fraction:
    """Exact order-n moment of the arcsine law on [-sqrt(2), sqrt(2)].

    Odd moments vanish; the 2m-th moment is C(2m, m) / 2^m.
    """
    if order < 0:
        raise ValueError(f"moment order must be >= 0, got {order}")
    if order % 2:
        return Fraction(0)
    m = order // 2
    return Fraction(math.comb(2 * m, m), 2**m)


def arcsine_density(x: float) -> float:
    """Density 1 / (pi * sqrt(2 - x^2)) on the open support, else 0."""
    r = 2.0 - x * x
    if r <= 0.0:
        return 0.0
    return 1.0 / (math.pi * math.sqrt(r))


def arcsine_cdf(x: float) -> float:
    """Distribution function of the arcsine law on [-sqrt(2), sqrt(2)]."""
    if x <= -SUPPORT_RADIUS:
        return 0.0
    if x >= SUPPORT_RADIUS:
        return 1.0
    return 0.5 + math.asin(x / SUPPORT_RADIUS) / math.pi


@dataclass(frozen=True)
class ArcsineLaw:
    """The arcsine law on [-sqrt(2), sqrt(2)]."""

    @property
    def support_radius(self) -> float:
        return SUPPORT_RADIUS

    def moment(self, order: int) -> Fraction:
        return arcsine_moment(order)

    def density(self, x: float) -> float:
        return arcsine_density(x)

    def cdf(self, x: float) -> float:
        return arcsine_cdf(x)

    def to_json(self, max_order: int) -> dict:
        if max_order < 0:
            raise ValueError(f"max_order must be >= 0, got {max_order}")
        return {
            "law": "arcsine",
            "params": {},
            "moments": [fraction_str(arcsine_moment(n)) for n in range(max_order + 1)],
        }


def vacuum_gaussian_moment(order: int) -> Fraction:
    """Moments of the centered Gaussian with variance 1/2.

    This is the vacuum position distribution of the standard oscillator:
    odd moments vanish and the 2m-th moment is (2m - 1)!! / 2^m.
    """
    if order < 0:
        raise ValueError(f"moment order must be >= 0, got {order}")
    if order % 2:
        return Fraction(0)
    m = order // 2
    return Fraction(math.prod(range(1, 2 * m, 2)), 2**m)


def classical_moment(
    amplitude_squared: Union[int, str, Fraction], order: int
) -> Fraction:
    """Exact position moments of a classical oscillator x(t) = A sin(t).

    Takes the squared amplitude A^2 so the even moments
    (A^2)^m * C(2m, m) / 4^m stay rational; odd moments vanish.
    """
    a2 = as_fraction(amplitude_squared)
    if a2 <= 0:
        raise ValueError(f"squared amplitude must be positive, got {a2}")
    if order < 0:
        raise ValueError(f"moment order must be >= 0, got {order}")
    if order % 2:
        return Fraction(0)
    m = order // 2
    return a2**m * Fraction(math.comb(2 * m, m), 4**m)


def classical_moment_quadrature(
    amplitude: float, order: int, panels: int = 256
) -> float:
    """Time-average of (A sin t)^order over one period, by quadrature.

    Uses the trapezoid rule on the periodic integrand, which reduces to a
    uniform mean over panel points and converges spectrally.  Requires
    panels >= 16.
    """
    if amplitude <= 0:
        raise ValueError(f"amplitude must be positive, got {amplitude}")
    if order < 0:
        raise ValueError(f"moment order must be >= 0, got {order}")
    if panels < 16:
        raise ValueError(f"need at least 16 panels, got {panels}")
    total = 0.0
    for j in range(panels):
        total += (amplitude * math.sin(2.0 * math.pi * j / panels)) ** order
    return total / panels


@dataclass(frozen=True)
class ClassicalOscillator:
    """A classical harmonic oscillator observed at a uniform random time.

    Its position x(t) = A sin(t) has the arcsine distribution on [-A, A];
    the squared amplitude is kept rational so moments are exact.  With
    A^2 = 2 the distribution is the arcsine law itself.
    """

    amplitude_squared: Fraction

    def __post_init__(self) -> None:
        if self.amplitude_squared <= 0:
            raise ValueError(
                f"squared amplitude must be positive, got {self.amplitude_squared}"
            )

    @property
    def amplitude(self) -> float:
        return math.sqrt(float(self.amplitude_squared))

    def moment(self, order: int) -> Fraction:
        return classical_moment(self.amplitude_squared, order)

    def density(self, x: float) -> float:
        r = float(self.amplitude_squared) - x * x
        if r <= 0.0:
            return 0.0
        return 1.0 / (math.pi * math.sqrt(r))

    def cdf(self, x: float) -> float:
        a = self.amplitude
        if x <= -a:
            return 0.0
        if x >= a:
            return 1.0
        return 0.5 + math.asin(x / a) / math.pi

    def to_json(self, max_order: int) -> dict:
        if max_order < 0:
            raise ValueError(f"max_order must be >= 0, got {max_order}")
        return {
            "law": "classical",
            "params": {"A2": fraction_str(self.amplitude_squared)},
            "moments": [fraction_str(self.moment(n)) for n in range(max_order + 1)],
        }


def validate_moments(values: Iterable[Union[int, str, Fraction]]) -> bool:
    """Decide exactly whether a sequence can be moments of a measure.

    Checks positive semidefiniteness of the Hankel matrix H[i][j] =
    m_{i+j} of size M + 1, M = (len - 1) // 2, by symmetric rational
    elimination.  A zero pivot is admissible only if its whole remaining
    row vanishes; leading principal minors alone would not decide PSD.
    """
    moments: list[Fraction] = [as_fraction(v) for v in values]
    if not moments:
        raise ValueError("need at least the zeroth moment")
    size = (len(moments) - 1) // 2 + 1
    h = [[moments[i + j] for j in range(size)] for i in range(size)]
    for k in range(size):
        pivot = h[k][k]
        if pivot < 0:
            return False
        if pivot == 0:
            if any(h[k][j] != 0 for j in range(k + 1, size)):
                return False
            continue
        for i in range(k + 1, size):
            factor = h[i][k] / pivot
            if factor == 0:
                continue
            for j in range(k, size):
                h[i][j] -= factor * h[k][j]
    return True
