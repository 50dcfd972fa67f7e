"""Command-line front end: ``hyperbessel {eval,zeros,radii,verify}``.

Exit codes: 0 success, 1 a verification suite failed, 2 usage or domain
error, 3 numerical failure.  Results go to stdout, diagnostics to stderr, and
output is a pure function of the flags.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

from . import inequalities, radii, series, zeros
from .exceptions import ComputationError, DimensionMismatch, DomainError
from .params import HyperBesselOrder, validate_order
from .series import FunctionKind

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_COMPUTE = 0, 1, 2, 3

SUITES = ("redheffer", "interlace", "monotone", "rayleigh")
MONOTONE_GRID = 200
UPPER_BOUND_GRID = 500
RAYLEIGH_COUNT = 50
INTERLACE_N = 6
MAX_LISTED_VIOLATIONS = 20


@dataclass(frozen=True)
class RunConfig:
    order: HyperBesselOrder
    tol: float = 1e-12
    grid: int = 1000
    count: int | None = None
    format: str = "json"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _alpha_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"alpha must be comma-separated numbers: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hyperbessel", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--d", type=int, help="dimension; inferred from --alpha when omitted")
    common.add_argument("--alpha", type=_alpha_list, required=True,
                        help="comma-separated alpha_1,...,alpha_d")
    common.add_argument("--tol", type=float, default=1e-12)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", parents=[common], help="evaluate a series")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--kind", default="normalized",
                   choices=[k.value for k in FunctionKind])
    p.add_argument("--deriv", type=int, default=0, help="0-2, normalized kind only")

    p = sub.add_parser("zeros", parents=[common], help="positive zeros")
    p.add_argument("--kind", default="normalized",
                   choices=[k.value for k in zeros.ZERO_KINDS])
    p.add_argument("--count", type=int, default=10)

    sub.add_parser("radii", parents=[common], help="geometric radii and their bounds")

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--grid", type=int, default=1000)
    p.add_argument("--count", type=int, default=None,
                   help=f"zeros in the Rayleigh suite (default {RAYLEIGH_COUNT})")
    return parser


def make_config(args) -> RunConfig:
    d = len(args.alpha) if args.d is None else args.d
    if args.d is not None and args.d != len(args.alpha):
        raise DimensionMismatch(f"--d {args.d} but {len(args.alpha)} alpha values given")
    order = validate_order(d, args.alpha)
    if not args.tol > 0:
        raise DomainError("--tol must be > 0")
    grid = getattr(args, "grid", 1000)
    if grid < 2:
        raise DomainError("--grid must be >= 2")
    count = getattr(args, "count", None)
    if count is not None and count < 1:
        raise DomainError("--count must be >= 1")
    return RunConfig(order, args.tol, grid, count, args.format)


# ---------------------------------------------------------------- commands

def cmd_eval(config: RunConfig, kind: str, x: float, deriv: int = 0):
    kind = FunctionKind.parse(kind)
    if deriv and kind is not FunctionKind.NORMALIZED:
        raise DomainError("--deriv is only supported for the normalized kind")
    if kind is FunctionKind.NORMALIZED:
        v = series.eval_normalized(config.order, x, deriv, config.tol)
    else:
        v = series.eval(kind, config.order, x, config.tol)
    result = {"kind": kind.value, "x": x, "deriv": deriv, "value": v.value,
              "error_bound": v.error_bound, "terms_used": v.terms_used}
    return EXIT_OK, result, {"tol": config.tol}, [result]


def cmd_zeros(config: RunConfig, kind: str):
    count = 10 if config.count is None else config.count
    table = zeros.zeros_up_to(FunctionKind(kind), config.order, count, config.tol)
    rows = [{"n": n, "zero": z, "residual": r, "bracket_lo": lo, "bracket_hi": hi}
            for n, (z, r, (lo, hi)) in enumerate(
                zip(table.zeros, table.residuals, table.brackets), 1)]
    diag = {"tol": config.tol, "asymptotic_gap": zeros.asymptotic_gap(config.order)}
    return EXIT_OK, {"kind": table.kind.value, "zeros": rows}, diag, rows


def _radius_dict(r: radii.RadiusResult, p: int):
    out = {"value": r.value, "value_pow": r.value**p, "residual": r.equation_residual,
           "bracket": list(r.bracket), "bound_check": r.bound_check}
    if r.bounds is not None:
        out["bounds"] = {"lower": r.bounds.lower, "upper": r.bounds.upper,
                         "source": r.bounds.source}
    return out


def cmd_radii(config: RunConfig):
    s = radii.all_radii(config.order, config.tol)
    p = config.order.p
    result = {name: _radius_dict(getattr(s, name), p)
              for name in ("starlike", "convex", "uniform_convex")}
    result["ordering_ok"] = s.ordering_ok
    result["starlike_cap"] = s.cap
    result["first_zero"] = s.first_zero
    rows = []
    for name in ("starlike", "convex", "uniform_convex"):
        r = result[name]
        b = r.get("bounds", {})
        rows.append({"radius": name, "value": r["value"], "value_pow": r["value_pow"],
                     "residual": r["residual"], "lower": b.get("lower", ""),
                     "upper": b.get("upper", ""), "bound_check": r["bound_check"]})
    checks_ok = s.ordering_ok and all(
        r["bound_check"] is not False for r in (result["starlike"], result["convex"]))
    diag = {"tol": config.tol, "starlike_exponent": radii.rayleigh.STARLIKE_EXPONENT_NOTE}
    return (EXIT_OK if checks_ok else EXIT_FAIL), result, diag, rows


def _report_dict(report: inequalities.VerificationReport):
    vs = report.violations
    return {
        "suite": report.suite,
        "status": report.status,
        "grid_size": report.grid_size,
        "violation_count": len(vs),
        "violations": [{"x": v.x, "lhs": v.lhs, "rhs": v.rhs, "margin": v.margin,
                        "check": v.check} for v in vs[:MAX_LISTED_VIOLATIONS]],
        "limits": None if report.limits is None else list(report.limits),
        "notes": list(report.notes),
        "details": dict(sorted(report.details.items())),
    }


def _interlace_report(order, tol):
    rep = zeros.verify_interlacing(order, INTERLACE_N, tol)
    out = inequalities.VerificationReport("interlace", INTERLACE_N)
    if rep.first_violation is not None:
        out.violations.append(inequalities.Violation(
            math.nan, float(sum(rep.sign_changes)), float(INTERLACE_N - 1), math.nan,
            rep.first_violation))
    out.notes.extend(rep.notes)
    out.details.update(zeros=list(rep.zeros), derivative_zeros=list(rep.derivative_zeros),
                       sign_changes=list(rep.sign_changes),
                       psi_interlaced=rep.psi_interlaced)
    return out


def run_suite(config: RunConfig, suite: str) -> list[inequalities.VerificationReport]:
    order = config.order
    if suite == "redheffer":
        return [inequalities.verify_redheffer(order, config.grid)]
    if suite == "interlace":
        return [_interlace_report(order, config.tol)]
    if suite == "monotone":
        return [inequalities.verify_monotone(order, MONOTONE_GRID),
                inequalities.verify_upper_bound(order, UPPER_BOUND_GRID)]
    if suite == "rayleigh":
        count = RAYLEIGH_COUNT if config.count is None else config.count
        return [inequalities.verify_rayleigh_sums(order, count)]
    raise DomainError(f"unknown suite {suite!r}")


def cmd_verify(config: RunConfig, suite: str):
    names = SUITES if suite == "all" else (suite,)
    reports = [r for name in names for r in run_suite(config, name)]
    result = [_report_dict(r) for r in reports]
    rows = [{"suite": r["suite"], "status": r["status"], "grid_size": r["grid_size"],
             "violations": r["violation_count"],
             "limit_at_0": r["limits"][0] if r["limits"] else "",
             "limit_at_j1": r["limits"][1] if r["limits"] else ""} for r in result]
    ok = all(r.passed for r in reports)
    return (EXIT_OK if ok else EXIT_FAIL), result, {"suites": list(names)}, rows


# ---------------------------------------------------------------- output

def _clean(obj):
    """Replace non-finite floats by strings so the JSON stays standard."""
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def _csv_field(v):
    if isinstance(v, bool) or v is None:
        return "" if v is None else str(v).lower()
    if isinstance(v, float):
        return format(v, ".17g")
    return v


def render(config: RunConfig, result, diagnostics, rows) -> str:
    if config.format == "csv":
        buf = io.StringIO()
        if rows:
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(list(rows[0]))
            for row in rows:
                writer.writerow([_csv_field(v) for v in row.values()])
        return buf.getvalue()
    doc = {"order": {"d": config.order.d, "alpha": list(config.order.alpha)},
           "result": result, "diagnostics": diagnostics}
    return json.dumps(_clean(doc), indent=2, allow_nan=False) + "\n"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = make_config(args)
        if args.command == "eval":
            code, result, diag, rows = cmd_eval(config, args.kind, args.x, args.deriv)
        elif args.command == "zeros":
            code, result, diag, rows = cmd_zeros(config, args.kind)
        elif args.command == "radii":
            code, result, diag, rows = cmd_radii(config)
        else:
            code, result, diag, rows = cmd_verify(config, args.suite)
    except DomainError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ComputationError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    sys.stdout.write(render(config, result, diag, rows))
    if code == EXIT_FAIL:
        print("verification failed", file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
