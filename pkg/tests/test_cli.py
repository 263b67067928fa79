import io
import json
import subprocess
import sys

import pytest

from mzv_csf.cli import run
from mzv_csf.cyclic_operators import rho
from mzv_csf.free_algebra import parse_poly


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_rho_text():
    code, out, _ = call("rho", "--n", "1", "--word", "xy")
    assert code == 0
    assert parse_poly(out.strip()) == parse_poly("xyy - xxy")
    assert out.strip() == "-1*xxy + 1*xyy"


def test_rho_structured():
    code, out, _ = call("rho", "--n", "1", "--word", "xy", "--format", "structured")
    assert code == 0
    assert json.loads(out) == {"terms": [{"coeff": "-1", "word": "xxy"}, {"coeff": "1", "word": "xyy"}]}


@pytest.mark.parametrize("argv", [
    ("rho", "--n", "0", "--word", "xy"),
    ("rho", "--n", "1", "--word", "xz"),
    ("rho", "--word", "xy"),
    ("map", "--name", "psi", "--input", "xy"),
    ("map", "--name", "d", "--input", "yx"),
    ("zeta", "--index", "1,2"),
    ("keyprop", "--n", "3", "--ks", "2,1"),
    ("verify", "nosuch"),
    ("verify", "lemma1", "--max-weight", "4"),
    ("frobnicate",),
])
def test_usage_errors_exit_2(argv):
    code, out, err = call(*argv)
    assert code == 2
    assert out == ""
    assert err


def test_usage_error_names_flag():
    _, _, err = call("rho", "--n", "0", "--word", "xy")
    assert "--n" in err and "usage:" in err


def test_poly_commands_round_trip():
    cases = [
        ("map", "--name", "phi", "--input", "xy"),
        ("map", "--name", "gamma-inv", "--input", "yy - 1/2*xy"),
        ("map", "--name", "alpha-tilde", "--input", "xxy"),
        ("star", "--left", "2", "--right", "1"),
        ("star", "--bar", "--left", "y", "--right", "y"),
        ("rhobar", "--n", "1", "--word", "xy"),
        ("del", "--n", "1", "--word", "yxy"),
        ("cderiv", "--variant", "c", "--word", "xy"),
    ]
    expected = ["-1*xy - 1*yy", "3/2*xx - 3/2*xy - 1*yx + 1*yy", "1*yyy", "1*xxy + 1*xyy + 1*yxy",
                "-1*xy + 2*yy", "-2*xxy + 1*xyy", "-1*xyxy - 1*yxxy + 1*yxyy", "1*xxy"]
    for argv, exp in zip(cases, expected):
        code, out, _ = call(*argv)
        assert code == 0, argv
        assert parse_poly(out.strip()) == parse_poly(exp), argv


def test_star_word_and_index_inputs_agree():
    assert call("star", "--left", "xy", "--right", "y")[1] == call("star", "--left", "2", "--right", "1")[1]
    # a bare 1 is the index (1), i.e. the word y
    assert call("star", "--left", "1", "--right", "1")[1] == call("star", "--left", "y", "--right", "y")[1]


def test_member_and_keyprop():
    code, out, _ = call("member", "--n", "1", "--word", "xy")
    assert code == 0 and out.startswith("member")
    code, out, _ = call("member", "--bar", "--n", "2", "--word", "xyy")
    assert code == 0 and out.startswith("member")
    code, out, _ = call("keyprop", "--n", "2", "--ks", "2,1")
    assert code == 0 and out.strip().endswith("equal")


def test_dims_structured():
    code, out, _ = call("dims", "--max-weight", "8", "--format", "structured")
    assert code == 0
    entries = {(e["weight"], e["n"]): e["dim"] for e in json.loads(out)["entries"]}
    assert entries[(8, 1)] == 18 and entries[(7, 3)] == 7 and entries[(8, 6)] == 1
    assert len(entries) == 21


def test_dims_deterministic_across_thread_counts(monkeypatch):
    first = call("dims", "--max-weight", "7")[1]
    monkeypatch.setenv("CSF_THREADS", "2")
    assert call("dims", "--max-weight", "7")[1] == first
    assert first.splitlines()[2].split("|")[1].split() == ["1", "2", "4", "6", "12"]


def test_zeta_and_check_csf():
    code, out, _ = call("zeta", "--index", "2")
    assert code == 0 and out.startswith("1.644")
    code, out, _ = call("zeta", "--star", "--index", "2,1", "--M", "1000")
    assert code == 0 and "M=1000" in out
    assert call("check-csf", "--ks", "2")[0] == 0
    assert call("check-csf", "--star", "--ks", "2")[0] == 0
    assert call("check-csf", "--ks", "2,1", "--M", "100", "--tolerance", "1e-9")[0] == 1


def test_verify_suites():
    code, out, _ = call("verify", "keyprop", "--max-weight", "6")
    assert code == 0 and "PASS" in out
    code, out, _ = call("verify", "lemma1", "--max-degree", "8")
    assert code == 0 and "0 failed" in out
    code, out, _ = call("verify", "numeric", "--max-weight", "6", "--M", "100000")
    assert code == 0


def test_verify_reports_failure_with_exit_1():
    code, out, _ = call("verify", "numeric", "--max-weight", "5", "--M", "1000", "--strict")
    assert code == 1
    assert "first counterexample" in out


def test_output_deterministic():
    argv = ("star", "--left", "2,1,3", "--right", "1,2")
    assert call(*argv) == call(*argv)
    p = parse_poly(call("rho", "--n", "3", "--word", "yxyxy")[1].strip())
    assert p == rho(3, parse_poly("yxyxy"))


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "mzv_csf", "rho", "--n", "1", "--word", "xy"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "-1*xxy + 1*xyy"
    res = subprocess.run([sys.executable, "-m", "mzv_csf", "rho", "--n", "0", "--word", "xy"],
                         capture_output=True, text=True)
    assert res.returncode == 2
