"""Parameter domain (d; alpha_1..alpha_d) and its closed-form constants."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exceptions import BadDimension, DimensionMismatch, OutOfDomain

# alpha_i this close to -1 makes A -> 0 and every bound meaningless
DOMAIN_MARGIN = 1e-12


@dataclass(frozen=True)
class HyperBesselOrder:
    """Validated order ``(d; alpha_1, ..., alpha_d)``.

    Build instances through :func:`validate_order`; the constructor itself
    re-runs the same checks so an invalid order can never exist.
    """

    d: int
    alpha: tuple[float, ...]

    def __post_init__(self):
        _check(self.d, self.alpha)

    @property
    def p(self) -> int:
        """The exponent d + 1 that appears everywhere."""
        return self.d + 1

    def __str__(self):
        return f"d={self.d}, alpha=({', '.join(repr(a) for a in self.alpha)})"


@dataclass(frozen=True)
class StructuralConstants:
    A: float
    B: float
    C: float
    S: float
    p1: float
    p2: float
    p3: float


def _check(d, alpha):
    if isinstance(d, bool) or not isinstance(d, int):
        raise BadDimension(f"d must be an integer, got {d!r}")
    if d < 1:
        raise BadDimension(f"d must be >= 1, got {d}")
    if len(alpha) != d:
        raise DimensionMismatch(f"expected {d} alpha values, got {len(alpha)}")
    for i, a in enumerate(alpha, 1):
        if not math.isfinite(a) or a <= -1.0 + DOMAIN_MARGIN:
            raise OutOfDomain(f"alpha_{i} = {a!r} violates alpha_i > -1")


def validate_order(d: int, alpha: Sequence[float]) -> HyperBesselOrder:
    """Check ``d >= 1``, ``len(alpha) == d`` and ``alpha_i > -1``.

    >>> validate_order(1, [0.0])
    HyperBesselOrder(d=1, alpha=(0.0,))
    """
    alpha = tuple(float(a) for a in alpha)
    _check(d, alpha)
    return HyperBesselOrder(d, alpha)


def _ordered_product(factors):
    # smallest magnitudes first
    return math.prod(sorted(factors, key=abs))


def structural_constants(order: HyperBesselOrder) -> StructuralConstants:
    """A, B, C (products of alpha_i + 1, 2, 3), S = sum(alpha) and (d+1)-powers."""
    p = order.p
    p1 = p**p
    return StructuralConstants(
        A=_ordered_product(a + 1 for a in order.alpha),
        B=_ordered_product(a + 2 for a in order.alpha),
        C=_ordered_product(a + 3 for a in order.alpha),
        S=math.fsum(order.alpha),
        p1=float(p1),
        p2=float(p1**2),
        p3=float(p1**3),
    )


def exact_constants(order: HyperBesselOrder) -> tuple[Fraction, Fraction, Fraction, int]:
    """(A, B, C, (d+1)^(d+1)) as exact rationals of the binary alpha values."""
    alpha = [Fraction(a) for a in order.alpha]
    A = math.prod((a + 1 for a in alpha), start=Fraction(1))
    B = math.prod((a + 2 for a in alpha), start=Fraction(1))
    C = math.prod((a + 3 for a in alpha), start=Fraction(1))
    return A, B, C, order.p**order.p


def pochhammer(beta: float, n: int) -> float:
    """Rising factorial ``beta (beta+1) ... (beta+n-1)``; ``(beta)_0 = 1``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return math.prod((beta + k for k in range(n)), start=1.0)


def log_gamma_product(order: HyperBesselOrder) -> float:
    """log of prod Gamma(alpha_i + 1)."""
    return math.fsum(math.lgamma(a + 1) for a in order.alpha)
