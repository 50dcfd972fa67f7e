"""Power-series evaluation of the normalized hyper-Bessel function and relatives.

Every function here is a series ``sum_n c_n w(m) x^(m+s)`` with ``m = n(d+1)``,

    c_n = (-1)^n / (n! (d+1)^(n(d+1)) prod_i (alpha_i + 1)_n),

a polynomial weight ``w`` and a fixed shift ``s``.  The terms alternate in sign
and, once they start shrinking, keep shrinking, so the first omitted term bounds
the truncation error.

Cancellation grows like exp(x): when double precision cannot deliver the
requested tolerance the sum is redone in :mod:`decimal` with enough digits to
absorb the largest term.
"""
from __future__ import annotations

import decimal
import enum
import math
import os
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .exceptions import DomainError, NoConvergence, OutOfDomain
from .params import HyperBesselOrder, log_gamma_product

DEFAULT_MAX_TERMS = 10_000
MAX_TERMS_ENV = "HYPERBESSEL_MAX_TERMS"

_EPS = 2.0**-53
# guards the lazily extended coefficient tables
_EXTEND_LOCK = threading.RLock()


class FunctionKind(enum.Enum):
    NORMALIZED = "normalized"      # script J
    F = "f"                        # x * script J
    PSI = "psi"                    # f'
    PHI = "phi"                    # (x f')'
    UNNORMALIZED = "unnormalized"  # J

    @classmethod
    def parse(cls, name: str) -> "FunctionKind":
        try:
            return cls(name.lower())
        except ValueError:
            raise DomainError(f"unknown function kind {name!r}") from None


@dataclass(frozen=True)
class SeriesValue:
    value: float
    error_bound: float
    terms_used: int
    peak_term: float = 1.0  # largest |term|, the scale of the cancellation


def max_terms_default() -> int:
    raw = os.environ.get(MAX_TERMS_ENV)
    if raw is None:
        return DEFAULT_MAX_TERMS
    try:
        n = int(raw)
    except ValueError:
        raise DomainError(f"{MAX_TERMS_ENV} must be an integer, got {raw!r}") from None
    if n < 1:
        raise DomainError(f"{MAX_TERMS_ENV} must be positive")
    return n


def _check_args(x, tol):
    if not math.isfinite(x) or x < 0:
        raise OutOfDomain(f"x must be finite and >= 0, got {x!r}")
    if not (tol > 0):
        raise DomainError(f"tol must be > 0, got {tol!r}")


def weighted_sum(
    order: HyperBesselOrder,
    x: float,
    weight: Callable[[int], int],
    shift: int = 0,
    tol: float = 1e-12,
    skip_leading: bool = False,
    max_terms: int | None = None,
    float_only: bool = False,
) -> SeriesValue | None:
    """Sum ``c_n weight(m) x^(m + shift)`` to absolute accuracy ``tol``.

    ``weight`` must be a polynomial in ``m`` that is nonnegative for
    ``m >= 0`` and whose ratio ``w(m + d + 1) / w(m)`` does not increase;
    that keeps the alternating-tail estimate valid.  Terms with
    ``weight(m) == 0`` are skipped, as is ``n = 0`` when ``skip_leading``.
    With ``float_only`` the call returns None instead of falling back to
    extended precision.
    """
    _check_args(x, tol)
    if max_terms is None:
        max_terms = max_terms_default()
    d, p = order.d, order.p
    n0 = 0
    while weight(n0 * p) == 0 or (skip_leading and n0 == 0):
        n0 += 1
        if n0 > 2:
            raise ValueError("weight vanishes on the first terms")

    if x == 0.0:
        # only the term with m + shift == 0 survives
        for n in range(n0, n0 + 2):
            m = n * p
            if m + shift == 0:
                c = 1.0 if n == 0 else -1.0 / (p**p * math.prod(a + 1 for a in order.alpha))
                value = c * weight(m)
                err = 0.0 if n == 0 else 4 * (d + 2) * _EPS * abs(value)
                return SeriesValue(value, err, 1)
        return SeriesValue(0.0, 0.0, 1)

    # magnitude pass in log space: truncation index and largest term
    half_tol = 0.5 * tol
    log_tol = math.log(half_tol)
    log_x = math.log(x)
    base = _LogCoefficients.of(order).weighted(weight)
    logs: list[float] = []
    n = n0
    stop = None
    while True:
        m = n * p
        logs.append(base[n] + (m + shift) * log_x)
        if len(logs) >= 2 and logs[-1] < logs[-2] and logs[-1] <= log_tol:
            stop = n - 1  # last summed index
            break
        if n - n0 >= max_terms:
            raise NoConvergence(
                f"series at x={x!r} did not converge within {max_terms} terms"
            )
        n += 1

    n_terms = stop - n0 + 1
    top = max(logs[:-1])
    log_sum = top + math.log(math.fsum(math.exp(v - top) for v in logs[:-1]))
    ops = 2 * (d + 4) * (n_terms + 1)

    if math.log(ops * _EPS) + log_sum <= log_tol:
        total, last, abs_sum = _sum_float(order, x, weight, shift, n0, stop)
        rounding = ops * _EPS * abs_sum
    elif float_only:
        return None
    else:
        digits = math.ceil(1 + math.log10(ops) + (log_sum - log_tol) / math.log(10)) + 3
        digits = max(digits, 20)
        total, last, digits = _sum_decimal(order, x, weight, shift, n0, stop, digits)
        # sum of |terms| taken from the magnitude pass, padded for its own error
        log_round = math.log(ops) + (1 - digits) * math.log(10) + log_sum + 1e-6
        rounding = math.exp(log_round) + _EPS * abs(total)
    peak = math.exp(top) if top < 709.0 else math.inf
    return SeriesValue(total, abs(last) + rounding, n_terms, peak)


class _LogCoefficients:
    """log|c_n| for one order, extended on demand."""

    _cache: dict = {}
    _lock = threading.Lock()

    def __init__(self, order):
        self.p = order.p
        self.shifted = [a + 1.0 for a in order.alpha]
        self.step = -order.p * math.log(order.p)
        self.values = [0.0]
        self.by_weight = {}

    @classmethod
    def of(cls, order):
        with cls._lock:
            table = cls._cache.get(order)
            if table is None:
                table = cls._cache[order] = cls(order)
            return table

    def __getitem__(self, n):
        values = self.values
        if n >= len(values):
            with _EXTEND_LOCK:
                while len(values) <= n:
                    k = len(values) - 1
                    values.append(values[-1] + self.step - math.log(k + 1)
                                  - math.fsum(math.log(a + k) for a in self.shifted))
        return values[n]

    def weighted(self, weight):
        """View whose n-th entry is log|c_n| + log weight(n p)."""
        view = self.by_weight.get(weight)
        if view is None:
            with _EXTEND_LOCK:
                view = self.by_weight.setdefault(weight, _WeightedLogs(self, weight))
        return view


class _WeightedLogs:
    def __init__(self, coefficients, weight):
        self.coefficients = coefficients
        self.weight = weight
        self.values = []

    def __getitem__(self, n):
        values = self.values
        if n >= len(values):
            c, w, p = self.coefficients, self.weight, self.coefficients.p
            with _EXTEND_LOCK:
                for k in range(len(values), n + 64):
                    wk = w(k * p)
                    values.append(c[k] + math.log(wk) if wk > 0 else -math.inf)
        return values[n]


@lru_cache(maxsize=512)
def _decimal_reciprocals(order, digits, count):
    """1 / ((k+1) (d+1)^(d+1) prod(alpha_i + 1 + k)) for k < count, to ``digits``."""
    D = decimal.Decimal
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        shifted = [D(a) + 1 for a in order.alpha]
        pp = D(order.p**order.p)
        out = []
        for k in range(count):
            den = (k + 1) * pp
            for a in shifted:
                den *= a + k
            out.append(1 / den)
        return tuple(out)


def _sum_float(order, x, weight, shift, n0, stop):
    p = order.p
    shifted = [a + 1.0 for a in order.alpha]
    xp = x**p
    pp = float(p**p)
    # v tracks c_n x^(m + shift)
    v = x ** (n0 * p + shift)
    for k in range(n0):
        v *= -1.0 / ((k + 1) * pp * math.prod(a + k for a in shifted))
    total = 0.0
    abs_sum = 0.0
    for n in range(n0, stop + 2):
        if n > n0:
            k = n - 1
            v = -v * xp / ((k + 1) * pp * math.prod(a + k for a in shifted))
        t = v * weight(n * p)
        if n <= stop:
            total += t
            abs_sum += abs(t)
        else:
            last = t
    return total, last, abs_sum


def _sum_decimal(order, x, weight, shift, n0, stop, digits):
    """Returns (total, first omitted term, digits actually used)."""
    D = decimal.Decimal
    p = order.p
    # round the request up so neighbouring calls share a reciprocal table
    digits = -(-digits // 8) * 8
    count = -(-(stop + 2) // 64) * 64
    inv = _decimal_reciprocals(order, digits, count)
    weights = [weight(n * p) for n in range(n0, stop + 2)]
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        ctx.Emax = decimal.MAX_EMAX
        ctx.Emin = decimal.MIN_EMIN
        xd = D(x)
        xp = xd**p
        v = xd ** (n0 * p + shift)
        for k in range(n0):
            v = -v * inv[k]
        total = v * weights[0]
        for n in range(n0 + 1, stop + 1):
            v = -(v * xp * inv[n - 1])
            total += v * weights[n - n0]
        last = -(v * xp * inv[stop]) * weights[-1]
        return float(total), float(last), digits


# weights and shifts for the supported series
_ONE = lambda m: 1  # noqa: E731
_D1 = lambda m: m  # noqa: E731
_D2 = lambda m: m * (m - 1)  # noqa: E731
_PSI = lambda m: m + 1  # noqa: E731
_PHI = lambda m: (m + 1) ** 2  # noqa: E731
_UC = lambda m: (m + 1) * (2 * m + 1)  # noqa: E731

_DERIVS = {0: (_ONE, 0), 1: (_D1, -1), 2: (_D2, -2)}


def eval_normalized(order: HyperBesselOrder, x: float, deriv: int = 0,
                    tol: float = 1e-12) -> SeriesValue:
    """script-J or its first or second derivative at ``x >= 0``."""
    if deriv not in _DERIVS:
        raise DomainError(f"deriv must be 0, 1 or 2, got {deriv!r}")
    weight, shift = _DERIVS[deriv]
    return weighted_sum(order, x, weight, shift, tol)


def eval_normalized_minus_one(order: HyperBesselOrder, x: float,
                              tol: float = 1e-12) -> SeriesValue:
    """script-J(x) - 1 without the cancellation of subtracting from 1."""
    return weighted_sum(order, x, _ONE, 0, tol, skip_leading=True)


def eval_uniform_convex_numerator(order: HyperBesselOrder, x: float,
                                  tol: float = 1e-12) -> SeriesValue:
    """``2x^2 J'' + 5x J' + J``, summed as one series with weight (m+1)(2m+1)."""
    return weighted_sum(order, x, _UC, 0, tol)


def _unnormalized(order, x, tol):
    S = math.fsum(order.alpha)
    if x == 0.0:
        if S < 0:
            raise OutOfDomain("J is singular at x = 0 when sum(alpha) < 0")
        if S > 0:
            return SeriesValue(0.0, 0.0, 1)
        pref = math.exp(-log_gamma_product(order))
        return SeriesValue(pref, 4 * order.d * _EPS * pref, 1)
    log_pref = S * math.log(x / order.p) - log_gamma_product(order)
    pref = math.exp(log_pref)
    inner_tol = tol / pref if pref > 0 else tol
    inner_tol = min(inner_tol, 1e300)
    inner = weighted_sum(order, x, _ONE, 0, inner_tol)
    value = pref * inner.value
    prefactor_err = 8 * (order.d + 2) * _EPS * abs(value)
    return SeriesValue(value, pref * inner.error_bound + prefactor_err,
                       inner.terms_used, pref * inner.peak_term)


def eval(kind: FunctionKind, order: HyperBesselOrder, x: float,
         tol: float = 1e-12) -> SeriesValue:
    """Evaluate one of the five function kinds at real ``x >= 0``."""
    kind = FunctionKind(kind)
    if kind is FunctionKind.NORMALIZED:
        return weighted_sum(order, x, _ONE, 0, tol)
    if kind is FunctionKind.F:
        return weighted_sum(order, x, _ONE, 1, tol)
    if kind is FunctionKind.PSI:
        return weighted_sum(order, x, _PSI, 0, tol)
    if kind is FunctionKind.PHI:
        return weighted_sum(order, x, _PHI, 0, tol)
    _check_args(x, tol)
    return _unnormalized(order, x, tol)
