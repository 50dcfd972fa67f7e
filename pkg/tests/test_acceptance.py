"""Acceptance criteria 1-11, each at its stated tolerance.

Every test records one PASS/FAIL line (see the summary at the end of the
pytest run) before asserting.  Criteria that cannot hold as stated are left
red; the analysis is in the decisions ledger and in the recorded detail.
"""
import math
import subprocess
import sys

import pytest

from acceptance_log import record
from grid import GRID
from helpers import ORACLE
from hyperbessel import inequalities as iq, radii, rayleigh, series
from hyperbessel.params import exact_constants, validate_order
from hyperbessel.series import FunctionKind
from hyperbessel.zeros import verify_interlacing, zeros_up_to

J0 = validate_order(1, [0.0])


def _first_zero(order):
    return zeros_up_to(FunctionKind.NORMALIZED, order, 1).zeros[0]


def _finish(label, failures, detail_ok):
    detail = detail_ok if not failures else f"{len(failures)} failure(s); first: {failures[0]}"
    record(label, not failures, detail)
    assert not failures, detail


def test_c01_classical_zeros():
    oracle = next(r for r in ORACLE["zeros"]
                  if r["d"] == 1 and r["alpha"] == [0.0] and r["kind"] == "normalized")
    got = zeros_up_to(FunctionKind.NORMALIZED, J0, 3).zeros
    errs = [abs(g - w) for g, w in zip(got, oracle["zeros"][:3])]
    failures = [f"j_0,{n + 1} off by {e:.2e}" for n, e in enumerate(errs) if not e <= 1e-10]
    if not abs(got[0] - 2.404825557695773) <= 1e-10:
        failures.append(f"j_0,1 = {got[0]!r}")
    _finish("C1 classical zeros", failures, f"max error {max(errs):.1e} (tol 1e-10)")


def test_c02_rayleigh_closed_forms():
    failures = []
    worst = 0.0
    for nu in (0.0, 0.5, 1.0, 2.0):
        d1, d2, _ = rayleigh.delta_sums(validate_order(1, [nu]))
        for got, want in ((d1, 1 / (4 * (nu + 1))), (d2, 1 / (16 * (nu + 1) ** 2 * (nu + 2)))):
            rel = abs(got - want) / want
            worst = max(worst, rel)
            if rel > 2 * sys.float_info.epsilon:
                failures.append(f"nu={nu}: {got!r} vs {want!r}")
    _finish("C2 Euler-Rayleigh closed forms", failures, f"max rel error {worst:.1e}")


def test_c03_first_zero_bounds():
    failures = []
    for o in GRID:
        z = _first_zero(o) ** o.p
        k1, k2 = rayleigh.first_zero_bounds(o)
        if not (k1.lower < z < k1.upper and k2.lower < z < k2.upper):
            failures.append(f"{o}: j1^p={z!r} outside {k1} / {k2}")
        if not (k1.lower <= k2.lower and k2.upper <= k1.upper):
            failures.append(f"{o}: k=2 pair not nested in k=1 pair")
    _finish("C3 first-zero bounds", failures, f"{len(GRID)} orders, 0 violations")


def test_c04_radius_bounds():
    failures = []
    for o in GRID:
        rs = radii.radius_starlike(o).value
        rc = radii.radius_convex(o).value
        pair, cap = rayleigh.starlike_bounds(o)
        if not pair.contains(rs):
            failures.append(f"{o}: (r*)^p={rs**o.p!r} outside {pair}")
        if not rayleigh.convex_bounds(o).contains(rc):
            failures.append(f"{o}: (r^c)^p={rc**o.p!r} outside convex bounds")
        if not rs < cap:
            failures.append(f"{o}: r*={rs!r} not below cap {cap!r}")
    _finish("C4 radius bounds", failures, f"{len(GRID)} orders, 0 violations")


def test_c05_characterizing_equations():
    failures = []
    worst = 0.0
    for o in GRID:
        tight = 1e-12 / 100
        checks = (
            (radii.radius_starlike(o).value, radii.starlike_residual),
            (radii.radius_convex(o).value, radii.convex_residual),
            (radii.radius_uniform_convex(o).value, radii.uniform_convex_residual),
        )
        for x, residual in checks:
            # the leading (n = 0) term of each combination is 1
            r = abs(residual(o, x, tight))
            worst = max(worst, r)
            if r > 1e-9:
                failures.append(f"{o}: {residual.__name__} = {r:.2e} at {x!r}")
    _finish("C5 characterizing equations", failures, f"max residual {worst:.1e} (tol 1e-9)")


def test_c06_ordering():
    failures = [str(o) for o in GRID if not radii.all_radii(o).ordering_ok]
    _finish("C6 radius ordering", failures, f"r_uc <= r_c < r* < j1 on {len(GRID)} orders")


def test_c07_rayleigh_convergence():
    failures = []
    tight = []
    for o in GRID:
        rep = iq.verify_rayleigh_sums(o, 50)
        failures.extend(f"{o}: {v.check} defect {v.lhs:.3e} vs {v.rhs:.3e}"
                        for v in rep.violations)
        tight.extend(f"{o}: {n}" for n in rep.notes)
    detail = f"50 zeros on {len(GRID)} orders"
    if tight:
        detail += f"; {len(tight)} defect(s) near the zero rounding level"
    _finish("C7 Rayleigh convergence", failures, detail)


def test_c08_interlacing():
    failures = []
    for o in GRID:
        rep = verify_interlacing(o, 6)
        if rep.status != "pass":
            failures.append(f"{o}: {rep.first_violation}")
    _finish("C8 interlacing", failures, f"n=6 on {len(GRID)} orders")


def test_c09a_redheffer():
    failures = []
    for o in GRID:
        rep = iq.verify_redheffer(o, 1000)
        if not rep.passed:
            failures.append(f"{o}: {rep.violations[0]}")
    _finish("C9a Redheffer inequality", failures, f"grid 1000 on {len(GRID)} orders")


def test_c09b_sigma_limits():
    failures = []
    worst0 = worst1 = 0.0
    for o in GRID:
        j1 = _first_zero(o)
        a, _ = iq.redheffer_exponents(o, j1)
        e0 = abs(iq.sigma(o, 1e-3 * j1, j1) - a)
        x_end = (1 - 1e-6) * j1
        raw = iq.sigma(o, x_end, j1)
        # fall back to the analytic (derivative-ratio) limit when the raw value
        # has not settled, since log J and log base both blow up there
        e1 = abs(raw - 1)
        if e1 > 1e-5:
            e1 = abs(iq.sigma_derivative_ratio(o, x_end, j1) - 1)
        worst0, worst1 = max(worst0, e0), max(worst1, e1)
        if e0 > 1e-5 or e1 > 1e-5:
            failures.append(f"{o}: |Sigma-a|={e0:.1e}, |Sigma-1|={e1:.1e}")
    _finish("C9b Sigma endpoint limits", failures,
            f"max |Sigma-a| {worst0:.1e}, max |Sigma-1| {worst1:.1e}")


def test_c09c_sharpness_probes_as_stated():
    """a inflated by 1e-3 and b deflated by 1e-3 must each produce a violation.

    Both moves make the inequality weaker (base < 1), so no violation can
    occur; this criterion is expected to stay red.  The opposite moves are run
    as well and reported in the detail.
    """
    failures = []
    opposite_ok = 0
    for o in GRID:
        a_probe = iq.sharpness_probe(o, 1 + 1e-3, 1.0)
        b_probe = iq.sharpness_probe(o, 1.0, 1 - 1e-3)
        if not a_probe.violations:
            failures.append(f"{o}: a*(1+1e-3) gives no violation")
        if not b_probe.violations:
            failures.append(f"{o}: b*(1-1e-3) gives no violation")
        if (iq.sharpness_probe(o, 1 - 1e-3, 1.0).violations
                and iq.sharpness_probe(o, 1.0, 1 + 1e-3).violations):
            opposite_ok += 1
    detail = (f"{len(failures)} probe(s) without violation; opposite direction "
              f"(a deflated, b inflated) violated on {opposite_ok}/{len(GRID)} orders")
    record("C9c sharpness probes (as stated)", not failures, detail)
    assert not failures, detail


def test_c10a_h_at_zero():
    failures = []
    for o in GRID:
        h0, tail = iq.h_at_zero(o)
        if not abs(h0) <= tail:
            failures.append(f"{o}: h(0)={h0:.3e}, tail {tail:.3e}")
    _finish("C10a h(0) = 0", failures, "within tail bound on all orders")


def test_c10b_h_derivatives_and_q_increasing():
    failures = []
    noted = 0
    for o in GRID:
        rep = iq.verify_monotone(o, 200, 4)
        noted += bool(rep.notes)
        failures.extend(f"{o}: {v}" for v in rep.violations)
    _finish("C10b h^(m) >= 0 (m<=4), q increasing", failures,
            f"200 points on {len(GRID)} orders; {noted} with noisy high-order q differences")


def test_c10c_q_at_zero():
    failures = []
    worst = 0.0
    for o in GRID:
        A = float(exact_constants(o)[0])
        S = math.fsum(o.alpha)
        target = o.p**S * A
        # q from its definition, just off the origin where q(x) = q(0)(1 + O(x^2))
        got = iq.q_direct(o, 1e-8)
        err = abs(got - target) / max(1.0, abs(target))
        worst = max(worst, err)
        if err > 1e-10:
            failures.append(f"{o}: q(0)={got:.12g} vs (d+1)^S A={target:.12g}")
    detail = (f"{len(failures)}/{len(GRID)} orders off, max rel error {worst:.2e}; "
              "q(0) is (d+1)^S prod Gamma(alpha_i+1)")
    record("C10c q(0) = (d+1)^S A", not failures, detail)
    assert not failures, detail


def test_c10d_upper_bound():
    failures = []
    gamma_ok = 0
    for o in GRID:
        rep = iq.verify_upper_bound(o, 500, constant="A")
        if not rep.passed:
            failures.append(f"{o}: {len(rep.violations)} violations")
        gamma_ok += iq.verify_upper_bound(o, 500, constant="gamma").passed
    detail = (f"{len(failures)}/{len(GRID)} orders fail with constant A; with "
              f"prod Gamma(alpha_i+1) {gamma_ok}/{len(GRID)} pass")
    record("C10d upper bound (grid 500)", not failures, detail)
    assert not failures, detail


@pytest.mark.parametrize("alpha", ["0", ",".join(str(a) for a in GRID[0].alpha)])
def test_c11_determinism(alpha):
    cmd = [sys.executable, "-m", "hyperbessel", "verify", "--alpha", alpha, "--suite", "all"]
    runs = [subprocess.run(cmd, capture_output=True) for _ in range(2)]
    same = runs[0].stdout == runs[1].stdout and runs[0].stderr == runs[1].stderr
    label = "C11 determinism" + ("" if alpha == "0" else " (grid order)")
    record(label, same and runs[0].stdout,
           f"{len(runs[0].stdout)} bytes, exit {runs[0].returncode}, identical={same}")
    assert same and runs[0].stdout
