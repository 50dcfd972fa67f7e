"""Closed-form Euler-Rayleigh sums and the first-zero and radius bounds they imply.

All sums are rational functions of A, B, C and (d+1)^(d+1).  They are evaluated
in exact rational arithmetic on the binary alpha values and rounded once, so
the d = 1 reductions come out correctly rounded.

For a positive sequence of zeros ``z_n`` with power sums
``s_k = sum z_n^(-k(d+1))`` the Euler-Rayleigh inequalities read
``s_k^(-1/k) < z_1^(d+1) < s_k / s_(k+1)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exceptions import DegenerateBound
from .params import HyperBesselOrder, exact_constants

# delta_1/delta_2 yields (d+2)^2 B in the denominator of the upper bound; a
# (d+2)^(2d) B variant is sometimes quoted and agrees only at d = 1.
STARLIKE_EXPONENT_NOTE = (
    "starlike upper bound uses (d+2)^2 B from delta_1/delta_2; the variant "
    "with (d+2)^(2d) B coincides with it only for d = 1"
)


@dataclass(frozen=True)
class BoundPair:
    """Strict bounds ``lower < value**power < upper``."""

    lower: float
    upper: float
    source: str
    power: int

    def __post_init__(self):
        if not (self.lower > 0 and self.lower < self.upper):
            raise DegenerateBound(
                f"{self.source}: degenerate bounds ({self.lower!r}, {self.upper!r})"
            )

    def contains(self, value: float) -> bool:
        """Whether ``value**power`` lies strictly inside the bounds."""
        v = value**self.power
        return self.lower < v < self.upper

    def root_interval(self) -> tuple[float, float]:
        """The bounds on ``value`` itself."""
        return self.lower ** (1.0 / self.power), self.upper ** (1.0 / self.power)


def _exact_delta(order):
    A, B, C, P = exact_constants(order)
    d1 = 1 / (P * A)
    d2 = (B - A) / (P**2 * A**2 * B)
    d3 = (A**2 - 3 * A * C + 2 * B * C) / (2 * P**3 * A**3 * B * C)
    return d1, d2, d3


def _exact_small_delta(order):
    A, B, _, P = exact_constants(order)
    d = order.d
    s1 = Fraction(d + 2) / (P * A)
    s2 = ((d + 2) ** 2 * B - (2 * d + 3) * A) / (P**2 * A**2 * B)
    return s1, s2


def _exact_epsilon(order):
    A, B, _, P = exact_constants(order)
    d = order.d
    e1 = Fraction((d + 2) ** 2) / (P * A)
    e2 = ((d + 2) ** 4 * B - (2 * d + 3) ** 2 * A) / (P**2 * A**2 * B)
    return e1, e2


def delta_sums(order: HyperBesselOrder) -> tuple[float, float, float]:
    """Sums of j_n^(-k(d+1)) over the zeros of script-J for k = 1, 2, 3."""
    return tuple(float(v) for v in _exact_delta(order))


def small_delta_sums(order: HyperBesselOrder) -> tuple[float, float]:
    """Sums of psi_n^(-k(d+1)) over the zeros of Psi = f' for k = 1, 2."""
    return tuple(float(v) for v in _exact_small_delta(order))


def epsilon_sums(order: HyperBesselOrder) -> tuple[float, float]:
    """Sums of tau_n^(-k(d+1)) over the zeros of Phi = (x f')' for k = 1, 2."""
    return tuple(float(v) for v in _exact_epsilon(order))


def first_zero_bounds(order: HyperBesselOrder) -> tuple[BoundPair, BoundPair]:
    """Bounds on j_1^(d+1) from k = 1 and k = 2."""
    d1, d2, d3 = _exact_delta(order)
    p = order.p
    k1 = BoundPair(float(1 / d1), float(d1 / d2), "first-zero k=1", p)
    k2 = BoundPair(float(1 / d1) * math.sqrt(d1**2 / d2), float(d2 / d3),
                   "first-zero k=2", p)
    return k1, k2


def starlike_bounds(order: HyperBesselOrder) -> tuple[BoundPair, float]:
    """Bounds on (r*)^(d+1), plus the cap r* < ((d+1)^d A)^(1/(d+1))."""
    s1, s2 = _exact_small_delta(order)
    A, _, _, _ = exact_constants(order)
    pair = BoundPair(float(1 / s1), float(s1 / s2), "starlike k=1", order.p)
    cap = float(order.p**order.d * A) ** (1.0 / order.p)
    return pair, cap


def convex_bounds(order: HyperBesselOrder) -> BoundPair:
    """Bounds on (r^c)^(d+1)."""
    e1, e2 = _exact_epsilon(order)
    return BoundPair(float(1 / e1), float(e1 / e2), "convex k=1", order.p)
