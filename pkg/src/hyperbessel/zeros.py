"""Positive zeros of script-J, Psi and Phi.

The first zero is bracketed by its Euler-Rayleigh bounds; later zeros are
found by a forward sign scan.  Every root is enclosed by bisection down to the
requested width and then polished with a few secant steps that must stay
inside the enclosure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from . import rayleigh, series
from .exceptions import BracketFailure, DomainError, MissedZeroSuspected
from .params import HyperBesselOrder
from .series import FunctionKind

RESIDUAL_TOL = 1e-10
SECANT_STEPS = 3
# absolute accuracy for sign decisions away from a root
SIGN_TOL = 1e-20
# first-try tolerance for sign decisions
LOOSE_TOL = 1e-13
# false-position steps stop at this multiple of tol; bisection finishes
ILLINOIS_WIDTH = 1e3
MAX_SCAN_STEPS = 100_000

ZERO_KINDS = (FunctionKind.NORMALIZED, FunctionKind.PSI, FunctionKind.PHI)

_WEIGHTS = {
    FunctionKind.NORMALIZED: (series._ONE, 0),
    FunctionKind.PSI: (series._PSI, 0),
    FunctionKind.PHI: (series._PHI, 0),
}


@dataclass(frozen=True)
class ZeroTable:
    kind: FunctionKind
    order: HyperBesselOrder
    zeros: tuple[float, ...]
    residuals: tuple[float, ...]
    brackets: tuple[tuple[float, float], ...]

    def __len__(self):
        return len(self.zeros)

    def power_sum(self, k: int = 1, count: int | None = None) -> float:
        """Partial Euler-Rayleigh sum of zero^(-k(d+1)) over the first ``count`` zeros."""
        q = k * self.order.p
        zs = self.zeros if count is None else self.zeros[:count]
        return math.fsum(z**-q for z in zs)


def _check_kind(kind):
    kind = FunctionKind(kind)
    if kind not in ZERO_KINDS:
        raise DomainError(f"zeros are tabulated for normalized, psi and phi, not {kind.value}")
    return kind


def asymptotic_gap(order: HyperBesselOrder) -> float:
    """Limiting spacing pi / sin(pi/(d+1)) of consecutive large zeros."""
    return math.pi / math.sin(math.pi / order.p)


def _sign_safe(order, weight, shift):
    """f(x, tol) accurate to ``tol``, or to 0.1% relative when that is looser.

    Root finding needs exact values only near a root; elsewhere a cheap
    evaluation whose error is far below |f| already fixes the sign.
    """
    def f(x, tol):
        if tol < LOOSE_TOL:
            quick = series.weighted_sum(order, x, weight, shift, LOOSE_TOL, float_only=True)
            if quick is not None and abs(quick.value) > 1e3 * quick.error_bound:
                return quick.value
        return series.weighted_sum(order, x, weight, shift, tol).value
    return f


def evaluator(kind: FunctionKind, order: HyperBesselOrder) -> Callable[[float, float], float]:
    weight, shift = _WEIGHTS[_check_kind(kind)]
    return _sign_safe(order, weight, shift)


def derivative_evaluator(order: HyperBesselOrder) -> Callable[[float, float], float]:
    return _sign_safe(order, series._D1, -1)


def _sign(v):
    return (v > 0) - (v < 0)


def refine_root(f: Callable[[float, float], float], lo: float, hi: float,
                tol: float) -> tuple[float, tuple[float, float], float]:
    """Enclose a sign change of ``f`` on ``[lo, hi]`` to width ``tol``.

    Returns ``(root, (lo, hi), scale)`` where ``scale`` is the larger endpoint
    magnitude of the starting bracket.
    """
    flo = f(lo, SIGN_TOL)
    fhi = f(hi, SIGN_TOL)
    if _sign(flo) * _sign(fhi) >= 0:
        raise BracketFailure(f"no sign change on [{lo!r}, {hi!r}]")
    scale = max(abs(flo), abs(fhi))
    # function accuracy fine enough to resolve a tol-wide enclosure
    slope = abs(fhi - flo) / (hi - lo)
    ftol = max(1e-3 * tol * slope, 1e-300)
    ftol = min(ftol, SIGN_TOL)
    lo, flo, hi, fhi = _illinois(f, lo, flo, hi, fhi, ILLINOIS_WIDTH * tol, ftol)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        fm = f(mid, ftol)
        if fm == 0.0:
            return mid, (lo, hi), scale
        if _sign(fm) == _sign(flo):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    # polish inside the enclosure and keep the point with the smallest |f|
    root, best = (lo, abs(flo)) if abs(flo) <= abs(fhi) else (hi, abs(fhi))
    x0, f0, x1, f1 = lo, flo, hi, fhi
    for _ in range(SECANT_STEPS):
        if f1 == f0 or best == 0.0:
            break
        x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
        if not lo <= x2 <= hi:
            break
        x0, f0, x1, f1 = x1, f1, x2, f(x2, ftol)
        if abs(f1) < best:
            root, best = x2, abs(f1)
    return root, (lo, hi), scale


def _illinois(f, lo, flo, hi, fhi, width, ftol):
    """Shrink a sign-change bracket to ``width`` by Illinois false position.

    Every step keeps a sign change; a plain bisection step is forced whenever
    a step fails to halve the bracket.  Returns true endpoint values.
    """
    wlo, whi = flo, fhi  # interpolation weights, halved on repeated sides
    side = 0
    for _ in range(100):
        width_before = hi - lo
        if width_before <= width:
            break
        x = (lo * whi - hi * wlo) / (whi - wlo)
        if not lo < x < hi:
            x = 0.5 * (lo + hi)
        fx = f(x, ftol)
        if fx == 0.0:
            return x, fx, x, fx
        if _sign(fx) == _sign(flo):
            lo, flo, wlo = x, fx, fx
            if side == -1:
                whi *= 0.5
            side = -1
        else:
            hi, fhi, whi = x, fx, fx
            if side == 1:
                wlo *= 0.5
            side = 1
        if hi - lo > 0.5 * width_before:
            mid = 0.5 * (lo + hi)
            fm = f(mid, ftol)
            if _sign(fm) == _sign(flo):
                lo, flo = mid, fm
            else:
                hi, fhi = mid, fm
            wlo, whi, side = flo, fhi, 0
    return lo, flo, hi, fhi


def _rayleigh_bracket(kind, order):
    if kind is FunctionKind.NORMALIZED:
        k1, k2 = rayleigh.first_zero_bounds(order)
        lower, upper = max(k1.lower, k2.lower), min(k1.upper, k2.upper)
        return lower ** (1 / order.p), upper ** (1 / order.p)
    if kind is FunctionKind.PSI:
        pair, _ = rayleigh.starlike_bounds(order)
    else:
        pair = rayleigh.convex_bounds(order)
    return pair.root_interval()


def _first_bracket(f, kind, order):
    lo, hi = _rayleigh_bracket(kind, order)
    # every kind equals 1 at the origin, so the first zero is a + to - crossing
    widen = 0.0
    while widen <= 0.5:
        a, b = lo * (1 - widen), hi * (1 + widen)
        if f(a, SIGN_TOL) > 0 and f(b, SIGN_TOL) < 0:
            return a, b
        widen = 1e-9 if widen == 0.0 else widen * 10
    # bounds unusable: scan from the origin
    step = lo / 8
    a = 0.0
    for _ in range(MAX_SCAN_STEPS):
        b = a + step
        if f(b, SIGN_TOL) < 0:
            return a, b
        a = b
    raise BracketFailure(f"no sign change found for the first zero of {kind.value}")


def _residual_ok(residual, scale):
    return abs(residual) <= RESIDUAL_TOL * max(1.0, scale)


def first_zero(kind: FunctionKind, order: HyperBesselOrder, tol: float = 1e-12) -> float:
    """Smallest positive zero of script-J, Psi or Phi, to within ``tol``."""
    return zeros_up_to(kind, order, 1, tol).zeros[0]


# longest table computed so far for each (kind, order, tol)
_LONGEST: dict = {}


def zeros_up_to(kind: FunctionKind, order: HyperBesselOrder, count: int,
                tol: float = 1e-12) -> ZeroTable:
    """The first ``count`` positive zeros, each bracketed and refined to ``tol``."""
    kind = _check_kind(kind)
    if count < 1:
        raise DomainError("count must be >= 1")
    if not tol > 0:
        raise DomainError("tol must be > 0")
    known = _LONGEST.get((kind, order, tol))
    if known is not None and len(known) >= count:
        if len(known) == count:
            return known
        return ZeroTable(kind, order, known.zeros[:count], known.residuals[:count],
                         known.brackets[:count])
    table = _compute_zeros(kind, order, count, tol)
    _LONGEST[(kind, order, tol)] = table
    return table


def _compute_zeros(kind, order, count, tol):
    f = evaluator(kind, order)
    zs, res, brs = [], [], []

    def accept(lo, hi):
        root, br, scale = refine_root(f, lo, hi, tol)
        r = f(root, min(SIGN_TOL, 1e-3 * tol))
        if not _residual_ok(r, scale):
            raise BracketFailure(f"residual {r!r} too large at {root!r}")
        zs.append(root)
        res.append(r)
        brs.append(br)

    accept(*_first_bracket(f, kind, order))
    step = min(zs[0] / 4, asymptotic_gap(order) / 2)
    x = brs[-1][1]
    fx = f(x, SIGN_TOL)
    while len(zs) < count:
        if len(zs) >= 2:
            step = min(step, 0.5 * min(b - a for a, b in zip(zs, zs[1:])))
        for _ in range(MAX_SCAN_STEPS):
            y = x + step
            fy = f(y, SIGN_TOL)
            if _sign(fy) != _sign(fx):
                break
            x, fx = y, fy
        else:
            raise BracketFailure(f"scan for zero {len(zs) + 1} of {kind.value} ran out of steps")
        accept(x, y)
        x = brs[-1][1]
        fx = f(x, SIGN_TOL)
    table = ZeroTable(kind, order, tuple(zs), tuple(res), tuple(brs))
    check_completeness(table)
    return table


def closed_form_sum(kind: FunctionKind, order: HyperBesselOrder) -> float:
    """Sum of zero^(-(d+1)) over all zeros of the given kind."""
    kind = _check_kind(kind)
    if kind is FunctionKind.NORMALIZED:
        return rayleigh.delta_sums(order)[0]
    if kind is FunctionKind.PSI:
        return rayleigh.small_delta_sums(order)[0]
    return rayleigh.epsilon_sums(order)[0]


def tail_estimate(zeros, power: float) -> float:
    """Midpoint-rule estimate of the sum of z^(-power) beyond the last zero."""
    gap = zeros[-1] - zeros[-2]
    return (zeros[-1] + gap / 2) ** (1 - power) / ((power - 1) * gap)


def tail_bound(zeros, power: float, order: HyperBesselOrder) -> float:
    """Upper estimate of the sum of z^(-power) beyond the last computed zero.

    Assumes later gaps are no smaller than both the last observed gap and the
    asymptotic spacing (the gaps settle monotonically onto the latter).
    """
    gap = min(zeros[-1] - zeros[-2], asymptotic_gap(order)) * (1 - 1e-3)
    return zeros[-1] ** (1 - power) / ((power - 1) * gap)


def check_completeness(table: ZeroTable) -> None:
    """Raise MissedZeroSuspected if the partial Rayleigh sum leaves too large a gap."""
    if len(table) < 3:
        return
    p = table.order.p
    total = closed_form_sum(table.kind, table.order)
    partial = table.power_sum(1)
    defect = total - partial
    if defect <= 0:
        raise MissedZeroSuspected(
            f"partial sum {partial!r} exceeds closed form {total!r}: spurious zero"
        )
    smallest_missing = table.zeros[-1] ** -p
    if defect - tail_estimate(table.zeros, p) > 0.5 * smallest_missing:
        raise MissedZeroSuspected(
            f"Rayleigh defect {defect!r} too large for the tail; a zero was skipped"
        )


@dataclass
class InterlacingReport:
    order: HyperBesselOrder
    n: int
    zeros: tuple[float, ...]
    derivative_zeros: tuple[float, ...]
    # sign changes of J' on (0, j_1), (j_1, j_2), ..., (j_{n-1}, j_n)
    sign_changes: tuple[int, ...]
    first_violation: str | None
    psi_zeros: tuple[float, ...] = ()
    psi_interlaced: bool | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "pass" if self.first_violation is None else "fail"


def _sign_changes(f, a, b, samples):
    xs = [a + (b - a) * k / (samples + 1) for k in range(1, samples + 1)]
    vals = [f(x, SIGN_TOL) for x in xs]
    found = []
    for (x0, v0), (x1, v1) in zip(zip(xs, vals), zip(xs[1:], vals[1:])):
        if _sign(v0) != _sign(v1):
            found.append((x0, x1))
    return found


def verify_interlacing(order: HyperBesselOrder, n: int = 6, tol: float = 1e-12,
                       samples: int = 64) -> InterlacingReport:
    """Check that one zero of J' lies in each (j_k, j_k+1) and none in (0, j_1).

    The zero of order d that J' has at the origin is excluded.
    """
    if n < 2:
        raise DomainError("n must be >= 2")
    table = zeros_up_to(FunctionKind.NORMALIZED, order, n, tol)
    df = derivative_evaluator(order)
    ends = (0.0,) + table.zeros
    counts, dzeros = [], []
    violation = None
    for k, (a, b) in enumerate(zip(ends, ends[1:])):
        changes = _sign_changes(df, a, b, samples)
        counts.append(len(changes))
        expected = 0 if k == 0 else 1
        if len(changes) != expected and violation is None:
            label = "(0, j_1)" if k == 0 else f"(j_{k}, j_{k + 1})"
            violation = f"{len(changes)} sign changes of J' on {label}, expected {expected}"
        for lo, hi in changes:
            dzeros.append(refine_root(df, lo, hi, tol)[0])

    report = InterlacingReport(order, n, table.zeros, tuple(dzeros), tuple(counts), violation)
    # informational: zeros of Psi = J + x J' against those of J
    psi = zeros_up_to(FunctionKind.PSI, order, n, tol).zeros
    report.psi_zeros = psi
    report.psi_interlaced = all(lo < z < hi for z, lo, hi in zip(psi, ends, ends[1:]))
    report.notes.append("Psi interlacing is informational only")
    return report
