"""Radii of starlikeness, convexity and uniform convexity of f(x) = x J(x).

Each radius is the smallest positive root of a real equation:

=================  ====================================  ==================
radius             equation                              solved as
=================  ====================================  ==================
starlikeness r*    x J' + J = 0                          first zero of Psi
convexity r^c      J + 3x J' + x^2 J'' = 0               first zero of Phi
uniform r^uc       2x^2 J'' + 5x J' + J = 0              root on (0, psi_1)
=================  ====================================  ==================

``tol`` is the half-width of the final enclosure in x units for all three.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import rayleigh, series
from .params import HyperBesselOrder
from .rayleigh import BoundPair
from .series import FunctionKind
from .zeros import first_zero, refine_root, zeros_up_to


@dataclass(frozen=True)
class RadiusResult:
    name: str
    value: float
    equation_residual: float
    bracket: tuple[float, float]
    bound_check: bool | None
    bounds: BoundPair | None = None


def _residual_tol(tol):
    return min(1e-3 * tol, 1e-16)


def starlike_residual(order: HyperBesselOrder, x: float, tol: float = 1e-16) -> float:
    j0 = series.eval_normalized(order, x, 0, tol).value
    j1 = series.eval_normalized(order, x, 1, tol).value
    return x * j1 + j0


def convex_residual(order: HyperBesselOrder, x: float, tol: float = 1e-16) -> float:
    j0, j1, j2 = (series.eval_normalized(order, x, k, tol).value for k in range(3))
    return j0 + 3 * x * j1 + x * x * j2


def uniform_convex_residual(order: HyperBesselOrder, x: float, tol: float = 1e-16) -> float:
    j0, j1, j2 = (series.eval_normalized(order, x, k, tol).value for k in range(3))
    return 2 * x * x * j2 + 5 * x * j1 + j0


def theta(order: HyperBesselOrder, r: float, tol: float = 1e-15) -> float:
    """1 + 2r f''(r)/f'(r); decreases from 1 to -inf on (0, psi_1)."""
    num = series.eval_uniform_convex_numerator(order, r, tol).value
    den = series.eval(FunctionKind.PSI, order, r, tol).value
    return num / den


def radius_starlike(order: HyperBesselOrder, tol: float = 1e-12) -> RadiusResult:
    table = zeros_up_to(FunctionKind.PSI, order, 1, tol)
    x = table.zeros[0]
    pair, cap = rayleigh.starlike_bounds(order)
    return RadiusResult(
        "starlike", x, starlike_residual(order, x, _residual_tol(tol)),
        table.brackets[0], pair.contains(x) and x < cap, pair,
    )


def radius_convex(order: HyperBesselOrder, tol: float = 1e-12) -> RadiusResult:
    table = zeros_up_to(FunctionKind.PHI, order, 1, tol)
    x = table.zeros[0]
    pair = rayleigh.convex_bounds(order)
    return RadiusResult(
        "convex", x, convex_residual(order, x, _residual_tol(tol)),
        table.brackets[0], pair.contains(x), pair,
    )


def radius_uniform_convex(order: HyperBesselOrder, tol: float = 1e-12) -> RadiusResult:
    psi1 = first_zero(FunctionKind.PSI, order, tol)
    # the numerator shares the sign of Theta on (0, psi_1), where f' > 0
    lo, hi = psi1 / 64, psi1 - tol

    def numerator(x, t):
        return series.eval_uniform_convex_numerator(order, x, t).value

    x, bracket, _ = refine_root(numerator, lo, hi, tol)
    return RadiusResult(
        "uniform_convex", x, uniform_convex_residual(order, x, _residual_tol(tol)),
        bracket, None,
    )


@dataclass(frozen=True)
class RadiiSummary:
    starlike: RadiusResult
    convex: RadiusResult
    uniform_convex: RadiusResult
    first_zero: float
    cap: float

    @property
    def ordering_ok(self) -> bool:
        """0 < r^uc <= r^c < r* < j_1."""
        return (0 < self.uniform_convex.value <= self.convex.value
                < self.starlike.value < self.first_zero)


def all_radii(order: HyperBesselOrder, tol: float = 1e-12) -> RadiiSummary:
    _, cap = rayleigh.starlike_bounds(order)
    return RadiiSummary(
        radius_starlike(order, tol),
        radius_convex(order, tol),
        radius_uniform_convex(order, tol),
        first_zero(FunctionKind.NORMALIZED, order, tol),
        cap,
    )
