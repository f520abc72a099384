import json
import subprocess
import sys

import pytest

from twistedalex.cli import main
from twistedalex.presentations import bundled_path


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_example(capsys):
    code, out, _ = run(capsys, "compute", "--presentation", "4_1", "--rep", str(bundled_path("4_1_rho.rep")),
                       "--column", "4")
    assert code == 0
    assert "numerator:   1 + t + 3*t^2 + t^3 + t^4" in out
    assert "denominator: 1 + 5*t + t^2" in out


def test_compute_json(capsys):
    code, out, _ = run(capsys, "compute", "--presentation", "unknot", "--trivial-rep", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["numerator"] == "1" and d["deficient"] is False


def test_compute_prime_mismatch(capsys):
    code, _, err = run(capsys, "compute", "--presentation", "4_1", "--rep", str(bundled_path("4_1_rho.rep")),
                       "--prime", "5")
    assert code == 2 and "does not match" in err


def test_syntax_error_has_position(capsys, tmp_path):
    f = tmp_path / "bad.pres"
    f.write_text("<a, b |\n a c>\n")
    code, _, err = run(capsys, "compute", "--presentation", str(f), "--trivial-rep")
    assert code == 2
    assert "line 2" in err and "column 4" in err


def test_prime_guards(capsys):
    assert run(capsys, "census", "--presentation", "3_1", "--prime", "9")[0] == 2
    code, _, err = run(capsys, "census", "--presentation", "3_1", "--prime", "101")
    assert code == 2 and "--allow-large-prime" in err


def test_budget_exit_code(capsys):
    code, _, err = run(capsys, "census", "--presentation", "4_1", "--prime", "5", "--node-budget", "10")
    assert code == 3 and "budget" in err


def test_census_text(capsys):
    code, out, _ = run(capsys, "census", "--presentation", "3_1", "--prime", "5")
    assert code == 0 and "720 representations" in out


def test_census_json_is_byte_stable(capsys):
    args = ["census", "--presentation", "4_1", "--prime", "5", "--format", "json"]
    a = run(capsys, *args)[1]
    b = run(capsys, *args)[1]
    c = run(capsys, *args, "--jobs", "2")[1]
    assert a == b == c
    assert json.loads(a)["representations"] == 600


def test_scan(capsys):
    code, out, _ = run(capsys, "scan", "--source", "8_21", "--target", "4_1", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["verdict"] == "no-surjection"
    assert d["witness_polynomial"] == "1 + t + 3*t^2 + t^3 + t^4"


def test_scan_several_primes(capsys):
    code, out, _ = run(capsys, "scan", "--source", "4_1", "--target", "unknot", "--prime", "3", "--prime", "5",
                       "--format", "json")
    d = json.loads(out)
    assert [r["prime"] for r in d] == [3, 5]
    assert all(r["verdict"] == "inconclusive" for r in d)


def test_verify_pass_and_fail(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--hom", str(bundled_path("9_37_to_4_1.hom")), "--prime", "5")
    assert code == 0 and "PASS" in out and "necessary condition only" in out
    bad = tmp_path / "bad.hom"
    bad.write_text("source: 4_1\ntarget: 4_1\nx1 -> x1\nx2 -> x2\nx3 -> x1\nx4 -> x1\n")
    code, out, _ = run(capsys, "verify", "--hom", str(bad), "--prime", "5")
    assert code == 1 and "FAIL" in out and "missing x3, x4" in out
    code, out, _ = run(capsys, "verify", "--hom", str(bad), "--prime", "5", "--format", "json")
    d = json.loads(out)
    assert d["passed"] is False and d["failures"][0]["witness"].startswith("presentation: 4_1")


def test_classical_and_knots(capsys):
    code, out, _ = run(capsys, "classical", "--presentation", "8_21", "--target", "4_1")
    assert code == 0 and "divisible by the polynomial of 4_1: yes" in out
    code, out, _ = run(capsys, "knots")
    assert "9_37" in out.split()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "twistedalex", "knots", "--format", "json"],
                          capture_output=True, text=True, check=True)
    assert "4_1" in json.loads(proc.stdout)["knots"]


def test_missing_subcommand():
    with pytest.raises(SystemExit):
        main([])
