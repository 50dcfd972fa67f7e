"""Numerical verification of the Redheffer-type bounds and the monotonicity results.

Notation: ``p = d + 1``, ``j1`` the first zero of script-J and ``J1 = j1**p``.

* Redheffer: ``base(x)**a <= J(x) <= base(x)**b`` on ``(0, j1)`` with
  ``base(x) = (J1 - x**p) / J1``, ``a = J1 / ((d+1)^(d+1) A)`` and ``b = 1``.
* ``h(x) = sum_n 1/(J_n - x) - 1/((d+1)^(d+1) A)`` and
  ``q(x) = x^(S/p) exp(-x/((d+1)^(d+1) A)) / J(x^(1/p))`` on ``[0, J1)`` are
  absolutely monotonic.
* Upper bound ``J(x) <= (x/p)^S exp(-x^p / ((d+1)^(d+1) A)) / A``.

Checks never raise on failure; they fill a :class:`VerificationReport`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from . import rayleigh, series
from .exceptions import OutOfDomain
from .params import HyperBesselOrder, exact_constants, log_gamma_product
from .series import FunctionKind
from .zeros import ZeroTable, first_zero, tail_bound, zeros_up_to

DEFAULT_TAIL_ZEROS = 40

UPPER_BOUND_NOTES = (
    "the bound is stated for x in [0, j1^(d+1)) but applied to J(x) with x^(d+1) "
    "in the exponent; it is checked on (0, j1)",
    "q(0) equals (d+1)^S prod Gamma(alpha_i+1); the constant A matches "
    "it only when that product equals A (e.g. all alpha_i = 0)",
)


class Violation(NamedTuple):
    x: float
    lhs: float
    rhs: float
    margin: float
    check: str = ""


@dataclass
class VerificationReport:
    suite: str
    grid_size: int
    violations: list[Violation] = field(default_factory=list)
    limits: tuple[float, float] | None = None
    notes: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "fail" if self.violations else "pass"

    @property
    def passed(self) -> bool:
        return not self.violations


def open_grid(lo: float, hi: float, n: int) -> list[float]:
    """``n`` uniform points strictly inside ``(lo, hi)``, one step from each end."""
    if n < 2:
        raise ValueError("grid needs at least 2 points")
    step = (hi - lo) / (n + 1)
    return [lo + k * step for k in range(1, n + 1)]


def _p1_times_a(order):
    A, _, _, P = exact_constants(order)
    return float(P * A)


def redheffer_exponents(order: HyperBesselOrder, j1: float) -> tuple[float, float]:
    """Sharp exponents ``(a, b)``; ``a = j1^(d+1) / ((d+1)^(d+1) A)`` and ``b = 1``."""
    return j1**order.p / _p1_times_a(order), 1.0


def _log_base(order, x, j1):
    """log((j1^p - x^p) / j1^p), accurate for x near 0 and near j1."""
    u = (x / j1) ** order.p
    if u < 0.5:
        return math.log1p(-u)
    delta = (j1 - x) / j1
    return math.log(-math.expm1(order.p * math.log1p(-delta)))


def _log_normalized(order, x, tol):
    # J - 1 is about -x^p/(p1 A) near 0; the tolerance must be relative to it
    lead = x**order.p / _p1_times_a(order)
    m1 = series.eval_normalized_minus_one(order, x, min(tol, 1e-18 * lead)).value
    return math.log1p(m1)


def sigma(order: HyperBesselOrder, x: float, j1: float, tol: float = 1e-17) -> float:
    """log J(x) / log base(x) on (0, j1); decreases from a to 1."""
    return _log_normalized(order, x, tol) / _log_base(order, x, j1)


def sigma_derivative_ratio(order: HyperBesselOrder, x: float, j1: float,
                           tol: float = 1e-20) -> float:
    """Ratio of the derivatives of log J and log base; same limits as sigma."""
    p = order.p
    jv = series.eval_normalized(order, x, 0, tol).value
    dj = series.eval_normalized(order, x, 1, tol).value
    # d/dx log base = -p x^(p-1) / (J1 - x^p), with J1 - x^p computed stably
    remaining = -math.expm1(p * math.log1p(-(j1 - x) / j1)) * j1**p
    return (dj / jv) * remaining / (-p * x ** (p - 1))


def verify_redheffer(order: HyperBesselOrder, grid_size: int = 1000, tol: float = 1e-12,
                     a: float | None = None, b: float | None = None,
                     j1: float | None = None) -> VerificationReport:
    """Check ``base^a <= J <= base^b`` on an open grid of ``(0, j1)``.

    ``a`` and ``b`` default to the sharp exponents; overriding them is how the
    sharpness probes run.  Also checks that sigma decreases along the grid and
    records its endpoint limits.
    """
    if j1 is None:
        j1 = first_zero(FunctionKind.NORMALIZED, order)
    a_sharp, b_sharp = redheffer_exponents(order, j1)
    a = a_sharp if a is None else a
    b = b_sharp if b is None else b
    report = VerificationReport("redheffer", grid_size)
    report.details.update(a=a, b=b, j1=j1)
    series_tol = min(1e-3 * tol, 1e-17)
    prev = None
    for x in open_grid(0.0, j1, grid_size):
        log_j = _log_normalized(order, x, series_tol)
        log_b = _log_base(order, x, j1)
        value = math.exp(log_j)
        lower = math.exp(a * log_b)
        upper = math.exp(b * log_b)
        if lower > value + tol:
            report.violations.append(Violation(x, lower, value, value - lower, "lower"))
        if value > upper + tol:
            report.violations.append(Violation(x, value, upper, upper - value, "upper"))
        s = log_j / log_b
        if prev is not None and s > prev + tol:
            report.violations.append(Violation(x, s, prev, prev - s, "sigma-decreasing"))
        prev = s

    near_zero = sigma(order, 1e-3 * j1, j1)
    x_end = (1 - 1e-6) * j1
    raw_end = sigma(order, x_end, j1)
    ratio_end = sigma_derivative_ratio(order, x_end, j1)
    report.limits = (near_zero, ratio_end)
    report.details.update(limit_at_0_expected=a_sharp, sigma_near_j1_raw=raw_end)
    report.notes.append(
        "limit at j1 taken from the derivative ratio; sigma itself approaches 1 "
        "only logarithmically"
    )
    return report


def upper_endpoint_probe(order: HyperBesselOrder, b: float, j1: float,
                         log_deltas=(-10.0, -1e2, -1e3, -1e4, -1e5, -1e6)) -> list[Violation]:
    """Test ``J <= base^b`` at ``x = j1 (1 - delta)`` for astronomically small delta.

    Uses the local expansions ``J(x) ~ -j1 J'(j1) delta`` and
    ``base(x) ~ p delta`` in log space, the only way to reach the region where
    sigma is within 1e-3 of its limit 1.
    """
    p = order.p
    c = -j1 * series.eval_normalized(order, j1, 1, 1e-20).value
    out = []
    for ld in log_deltas:
        log_j = math.log(c) + ld
        log_base = math.log(p) + ld
        if log_j > b * log_base:
            out.append(Violation(math.exp(ld), log_j, b * log_base,
                                 b * log_base - log_j, "upper-endpoint"))
    return out


def sharpness_probe(order: HyperBesselOrder, a_factor: float, b_factor: float,
                    grid_size: int = 1000, tol: float = 1e-12) -> VerificationReport:
    """Run the Redheffer check with exponents ``a*a_factor`` and ``b*b_factor``.

    A sharp exponent pair means shrinking ``a`` or growing ``b`` by any amount
    must produce violations.
    """
    j1 = first_zero(FunctionKind.NORMALIZED, order)
    a, b = redheffer_exponents(order, j1)
    report = verify_redheffer(order, grid_size, tol, a * a_factor, b * b_factor, j1)
    report.suite = "redheffer-probe"
    report.violations = [v for v in report.violations if v.check != "sigma-decreasing"]
    report.violations.extend(upper_endpoint_probe(order, b * b_factor, j1))
    report.details.update(a_factor=a_factor, b_factor=b_factor)
    return report


def _tail_table(order, n_zeros, table):
    if table is None:
        table = zeros_up_to(FunctionKind.NORMALIZED, order, n_zeros + 1)
    if len(table) < n_zeros + 1:
        raise ValueError(f"need {n_zeros + 1} zeros, table has {len(table)}")
    return table


def h_bounds(order: HyperBesselOrder, x: float, n_zeros: int = DEFAULT_TAIL_ZEROS,
             deriv: int = 0, table: ZeroTable | None = None) -> tuple[float, float]:
    """Enclosure of the ``deriv``-th derivative of h at ``x`` in ``[0, J1)``.

    The first ``n_zeros`` zeros are summed explicitly.  The tail is at least
    its value at x = 0 and at most that times J_(N+1)/(J_(N+1) - x)^(m+1).
    """
    table = _tail_table(order, n_zeros, table)
    p = order.p
    big = [z**p for z in table.zeros]
    if not 0 <= x < big[0]:
        raise OutOfDomain(f"h is defined on [0, j1^(d+1)) = [0, {big[0]!r}), got {x!r}")
    if deriv < 0:
        raise ValueError("deriv must be >= 0")
    m = deriv
    fact = math.factorial(m)
    delta1 = 1.0 / _p1_times_a(order)
    head = math.fsum(fact / (z - x) ** (m + 1) for z in big[:n_zeros])
    rest = max(delta1 - math.fsum(1.0 / z for z in big[:n_zeros]), 0.0)
    nxt = big[n_zeros]
    tail_hi = fact * rest * nxt / (nxt - x) ** (m + 1)
    if m == 0:
        return head + rest - delta1, head + tail_hi - delta1
    return head, head + tail_hi


def h_function(order: HyperBesselOrder, x: float, n_zeros: int = DEFAULT_TAIL_ZEROS,
               deriv: int = 0, table: ZeroTable | None = None) -> float:
    """Midpoint of :func:`h_bounds`."""
    lo, hi = h_bounds(order, x, n_zeros, deriv, table)
    return 0.5 * (lo + hi)


def h_series(order: HyperBesselOrder, x: float, tol: float = 1e-17) -> float:
    """h from the power series, ``-Delta_1 - t J'(t) / (p x J(t))`` with t = x^(1/p)."""
    if x == 0:
        return 0.0
    p = order.p
    t = x ** (1.0 / p)
    jv = series.eval_normalized(order, t, 0, tol).value
    dj = series.eval_normalized(order, t, 1, tol).value
    return -1.0 / _p1_times_a(order) - t * dj / (p * x * jv)


def h_at_zero(order: HyperBesselOrder, n_zeros: int = DEFAULT_TAIL_ZEROS,
              table: ZeroTable | None = None) -> tuple[float, float]:
    """h(0) from the explicit zeros alone, and the tail bound it must lie within.

    Unlike :func:`h_bounds`, the tail is not taken from the closed form, so
    this is a genuine test of ``sum_n j_n^(-(d+1)) = 1/((d+1)^(d+1) A)``.
    """
    table = _tail_table(order, n_zeros, table)
    zs = table.zeros[:n_zeros]
    head = math.fsum(z**-order.p for z in zs)
    return head - 1.0 / _p1_times_a(order), tail_bound(zs, order.p, order)


def q_direct(order: HyperBesselOrder, x: float, tol: float = 1e-17) -> float:
    """q evaluated literally from the unnormalized J, for x > 0."""
    if not x > 0:
        raise OutOfDomain("the direct form of q needs x > 0")
    t = x ** (1.0 / order.p)
    S = math.fsum(order.alpha)
    jv = series.eval(FunctionKind.UNNORMALIZED, order, t, tol).value
    return x ** (S / order.p) * math.exp(-x / _p1_times_a(order)) / jv


def q_at_zero(order: HyperBesselOrder) -> float:
    """The true value (d+1)^S prod Gamma(alpha_i + 1) of q at the origin."""
    S = math.fsum(order.alpha)
    return math.exp(S * math.log(order.p) + log_gamma_product(order))


def q_function(order: HyperBesselOrder, x: float, j1: float | None = None,
               tol: float = 1e-17) -> float:
    """``x^(S/p) exp(-x/((d+1)^(d+1)A)) / J(x^(1/p))`` on ``[0, j1^p)``.

    Evaluated in the cancelled form
    ``(d+1)^S prod Gamma(alpha_i+1) exp(-x/((d+1)^(d+1)A)) / script-J(x^(1/p))``,
    which also gives the limit at x = 0 when sum(alpha) < 0.
    """
    if j1 is None:
        j1 = first_zero(FunctionKind.NORMALIZED, order)
    if not 0 <= x < j1**order.p:
        raise OutOfDomain(f"q is defined on [0, j1^(d+1)), got {x!r}")
    t = x ** (1.0 / order.p)
    jv = series.eval_normalized(order, t, 0, tol).value
    return q_at_zero(order) * math.exp(-x / _p1_times_a(order)) / jv


def forward_differences(values: list[float], k: int) -> list[float]:
    out = list(values)
    for _ in range(k):
        out = [b - a for a, b in zip(out, out[1:])]
    return out


def verify_monotone(order: HyperBesselOrder, grid_size: int = 200, max_deriv: int = 4,
                    fraction: float = 0.95, n_zeros: int = DEFAULT_TAIL_ZEROS) -> VerificationReport:
    """Absolute monotonicity of h (derivatives 0..max_deriv) and q (forward differences)."""
    table = _tail_table(order, n_zeros, None)
    j1 = table.zeros[0]
    big1 = j1**order.p
    report = VerificationReport("monotone", grid_size)
    xs = [fraction * big1 * k / (grid_size - 1) for k in range(grid_size)]

    h0, h0_tail = h_at_zero(order, n_zeros, table)
    report.details["h0"] = h0
    report.details["h0_tail"] = h0_tail
    if abs(h0) > h0_tail:
        report.violations.append(Violation(0.0, h0, 0.0, h0_tail - abs(h0), "h(0)"))
    for m in range(max_deriv + 1):
        for x in xs:
            lo, hi = h_bounds(order, x, n_zeros, m, table)
            # only the upper end of the enclosure certifies a sign failure
            if hi < 0:
                report.violations.append(Violation(x, hi, 0.0, hi, f"h^({m})"))

    qs = [q_function(order, x, j1) for x in xs]
    noise = 2.2e-16 * 8 * max(qs)
    report.details["q0"] = qs[0]
    for k in range(1, max_deriv + 1):
        diffs = forward_differences(qs, k)
        scaled_noise = noise * 2**k
        smallest = min(abs(v) for v in diffs)
        if scaled_noise >= 0.01 * smallest:
            report.notes.append(
                f"order-{k} differences reach the rounding level ({smallest:.3g})"
            )
        for x, v in zip(xs, diffs):
            if v < -scaled_noise:
                report.violations.append(Violation(x, v, 0.0, v, f"q-diff{k}"))
    return report


def verify_upper_bound(order: HyperBesselOrder, grid_size: int = 500,
                       constant: str = "A", tol: float = 1e-12) -> VerificationReport:
    """Check ``J(x) <= (x/p)^S exp(-x^p/((d+1)^(d+1)A)) / K`` on an open grid of (0, j1).

    ``constant="A"`` uses K = A(alpha); ``constant="gamma"`` uses
    K = prod Gamma(alpha_i + 1), the value that q(0) actually takes.
    """
    if constant not in ("A", "gamma"):
        raise ValueError("constant must be 'A' or 'gamma'")
    j1 = first_zero(FunctionKind.NORMALIZED, order)
    p = order.p
    S = math.fsum(order.alpha)
    p1a = _p1_times_a(order)
    log_gamma = log_gamma_product(order)
    A, _, _, _ = exact_constants(order)
    log_k = math.log(float(A)) if constant == "A" else log_gamma
    report = VerificationReport("upper-bound", grid_size)
    report.details["constant"] = constant
    report.notes.extend(UPPER_BOUND_NOTES)
    for x in open_grid(0.0, j1, grid_size):
        jv = series.eval_normalized(order, x, 0, 1e-17).value
        log_pref = S * math.log(x / p)
        # compare J / (x/p)^S = script-J / prod Gamma against exp(...)/K
        scaled_lhs = jv * math.exp(-log_gamma)
        scaled_rhs = math.exp(-x**p / p1a - log_k)
        if scaled_lhs > scaled_rhs * (1 + tol):
            lhs = scaled_lhs * math.exp(log_pref)
            rhs = scaled_rhs * math.exp(log_pref)
            report.violations.append(Violation(x, lhs, rhs, rhs - lhs, constant))
    return report


def _exact_defect(exact_total, zs, power):
    """exact_total - sum z^(-power) evaluated exactly on the binary zeros."""
    partial = sum(Fraction(z) ** -power for z in zs)
    return float(exact_total - partial)


def verify_rayleigh_sums(order: HyperBesselOrder, count: int = 50) -> VerificationReport:
    """Partial sums of j_n^(-(d+1)) and j_n^(-2(d+1)) against their closed forms.

    Each defect must be positive, no larger than the tail bound, and smaller
    at ``count`` zeros than at ``count // 2``.  Defects are computed exactly
    from the double-precision zeros; ``resolution`` is how far a one-ulp shift
    of every zero would move them.
    """
    table = zeros_up_to(FunctionKind.NORMALIZED, order, count)
    exact = rayleigh._exact_delta(order)
    report = VerificationReport("rayleigh", count)
    p = order.p
    for k in (1, 2):
        q = k * p
        defect = _exact_defect(exact[k - 1], table.zeros, q)
        half = _exact_defect(exact[k - 1], table.zeros[:max(count // 2, 1)], q)
        bound = tail_bound(table.zeros, q, order) if count >= 2 else math.inf
        resolution = math.fsum(q * math.ulp(z) / z * z**-q for z in table.zeros)
        report.details[f"delta{k}"] = float(exact[k - 1])
        report.details[f"partial{k}"] = table.power_sum(k)
        report.details[f"defect{k}"] = defect
        report.details[f"tail_bound{k}"] = bound
        report.details[f"resolution{k}"] = resolution
        if not defect > 0:
            report.violations.append(Violation(count, defect, 0.0, defect, f"below-delta{k}"))
        if defect > bound:
            report.violations.append(Violation(count, defect, bound, bound - defect, f"tail{k}"))
        if count >= 2 and not half > defect:
            report.violations.append(Violation(count, defect, half, half - defect, f"converging{k}"))
        if resolution > 0.1 * defect:
            report.notes.append(
                f"k={k}: defect {defect:.3g} is within 10x of the zero rounding level "
                f"{resolution:.3g}"
            )
    return report
