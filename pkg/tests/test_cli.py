import csv
import io
import json
import subprocess
import sys

import pytest

from hyperbessel.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_json(capsys):
    code, out, _ = run(capsys, "eval", "--d", "1", "--alpha", "0", "--x", "2")
    doc = json.loads(out)
    assert code == 0
    assert set(doc) == {"order", "result", "diagnostics"}
    assert doc["order"] == {"d": 1, "alpha": [0.0]}
    assert abs(doc["result"]["value"] - 0.2238907791) < 1e-10


def test_eval_origin_csv(capsys):
    code, out, _ = run(capsys, "eval", "--alpha", "0", "--x", "0", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and rows[0]["value"] == "1" and rows[0]["error_bound"] == "0"


@pytest.mark.parametrize("argv", [
    ["eval", "--d", "2", "--alpha", "0,-1", "--x", "1"],
    ["eval", "--d", "2", "--alpha", "0", "--x", "1"],
    ["eval", "--alpha", "0", "--x", "-1"],
    ["eval", "--alpha", "0", "--x", "1", "--kind", "psi", "--deriv", "1"],
    ["zeros", "--alpha", "0", "--count", "0"],
    ["verify", "--alpha", "0", "--grid", "1"],
    ["eval", "--alpha", "a,b", "--x", "1"],
    ["nonsense"],
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as info:
        raise SystemExit(main(argv))
    assert info.value.code == 2
    assert capsys.readouterr().err.strip()


def test_zeros_csv(capsys):
    code, out, _ = run(capsys, "zeros", "--d", "1", "--alpha", "0", "--count", "3",
                       "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert [round(float(r["zero"]), 5) for r in rows] == [2.40483, 5.52008, 8.65373]
    # 17 significant digits
    assert rows[0]["zero"] == format(float(rows[0]["zero"]), ".17g")


def test_zeros_variants(capsys):
    _, out, _ = run(capsys, "zeros", "--alpha", "0,0", "--count", "1")
    z = json.loads(out)["result"]["zeros"][0]["zero"]
    assert 31.177 < z**3 < 31.696
    _, out, _ = run(capsys, "zeros", "--alpha", "0", "--count", "1", "--kind", "psi")
    assert 1.1547 < json.loads(out)["result"]["zeros"][0]["zero"] < 1.3587


def test_zeros_compute_failure_exit_3(capsys, monkeypatch):
    monkeypatch.setenv("HYPERBESSEL_MAX_TERMS", "2")
    code, _, err = run(capsys, "zeros", "--alpha", "0.123", "--count", "3")
    assert code == 3 and "NoConvergence" in err


def test_radii(capsys):
    code, out, _ = run(capsys, "radii", "--d", "2", "--alpha", "0,0")
    res = json.loads(out)["result"]
    assert code == 0 and res["ordering_ok"]
    assert 6.75 < res["starlike"]["value_pow"] < 7.579
    assert 1.6875 < res["convex"]["value_pow"] < 1.7723
    assert res["starlike"]["bound_check"] and res["convex"]["bound_check"]


def test_verify_all_classical(capsys):
    code, out, _ = run(capsys, "verify", "--d", "1", "--alpha", "0", "--suite", "all",
                       "--grid", "1000")
    assert code == 0
    assert {r["suite"] for r in json.loads(out)["result"]} == {
        "redheffer", "interlace", "monotone", "upper-bound", "rayleigh"}


def test_verify_redheffer_d3(capsys):
    code, _, _ = run(capsys, "verify", "--d", "3", "--alpha", "0.25,0.5,0.75",
                     "--suite", "redheffer")
    assert code == 0


def test_verify_rayleigh(capsys):
    code, out, _ = run(capsys, "verify", "--d", "1", "--alpha", "0", "--suite", "rayleigh")
    det = json.loads(out)["result"][0]["details"]
    assert code == 0
    assert det["partial1"] < det["delta1"] and det["partial2"] < det["delta2"]


def test_verify_failure_exit_1(capsys):
    # the exponential upper bound with constant A fails once alpha != 0
    code, out, err = run(capsys, "verify", "--alpha", "1", "--suite", "monotone",
                         "--format", "csv")
    assert code == 1 and "verification failed" in err
    assert "upper-bound,fail" in out


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "hyperbessel", "verify", "--alpha", "0.5", "--suite",
           "redheffer", "--grid", "200"]
    a = subprocess.run(cmd, capture_output=True, check=True)
    b = subprocess.run(cmd, capture_output=True, check=True)
    assert a.stdout == b.stdout and a.stdout
