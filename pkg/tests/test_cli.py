import io
import json
import subprocess
import sys

import pytest

from rationaldiff.cli import run
from rationaldiff.numerics import format_real


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_classify_riccati_example():
    code, out, _ = call("classify", "--eq", "riccati", "--alpha", "-1", "--beta", "1", "--A", "1", "--B", "1")
    assert code == 0
    assert out == "case7 R=0.5 phi=0.7853981633974483\n"


def test_forbidden_check_example():
    code, out, _ = call("forbidden-check", "--eq", "eq4", "--B", "1", "--z0", "0", "--zm1", "-1")
    assert code == 0 and out == "member branch=seed n=1\n"


def test_forbidden_check_reports_step_when_it_differs():
    code, out, _ = call("forbidden-check", "--eq", "eq4", "--B", "1", "--z0", "-1.5", "--zm1", "-1")
    assert out == "member branch=even n=2 step=4\n"
    code, out, _ = call("forbidden-check", "--eq", "eq6", "--B", "1", "--z0", "2", "--zm1", "2", "--n-max", "10")
    assert code == 0 and out == "not-member\n"


def test_orbit_csv_example():
    code, out, _ = call("orbit", "--eq", "eq9", "--B", "1", "--z0", "-1", "--zm1", "5", "--n", "3", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,z_re,z_im"
    assert [tuple(l.split(",")[:2]) for l in lines[1:]] == [("0", "-1"), ("1", "-1"), ("2", "-1"), ("3", "-1")]
    assert "\r" not in out


def test_orbit_json_is_line_delimited():
    code, out, _ = call("orbit", "--eq", "riccati", "--alpha", "0", "--beta", "1", "--A", "1", "--B", "1",
                        "--x0", "1", "--n", "3", "--format", "json")
    recs = [json.loads(l) for l in out.splitlines()]
    assert [r["n"] for r in recs] == [0, 1, 2, 3]
    assert recs[3]["z"] == [0.25, 0.0]


def test_orbit_singular_exit_code():
    code, out, err = call("orbit", "--eq", "eq4", "--B", "1", "--z0", "0", "--zm1", "-1", "--n", "4")
    assert code == 3 and "step 1" in err
    assert out.splitlines() == ["n,z_re,z_im", "0,0,0"]


def test_solve_matches_orbit():
    base = ["--eq", "eq8", "--B", "0.5+0.25i", "--z0", "1-i", "--zm1", "0.3", "--n", "12"]
    _, solved, _ = call("solve", *base)
    _, iterated, _ = call("orbit", *base)
    rows_s = [l.split(",") for l in solved.splitlines()[1:]]
    rows_i = [l.split(",") for l in iterated.splitlines()[1:]]
    assert len(rows_s) == len(rows_i) == 13
    for a, b in zip(rows_s, rows_i):
        za, zb = complex(float(a[1]), float(a[2])), complex(float(b[1]), float(b[2]))
        assert abs(za - zb) <= 1e-9 * max(1, abs(zb))


def test_solve_lyness_is_unsupported():
    code, _, err = call("solve", "--eq", "lyness", "--alpha", "1", "--window", "1,1", "--n", "3")
    assert code == 2 and "not available" in err


def test_complex_flags_with_leading_minus():
    code, out, _ = call("classify", "--eq", "riccati", "--alpha", "-1-2i", "--beta", "1", "--A", "1", "--B", "-i")
    assert code == 0 and out.startswith("case")


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "--eq", "riccati", "--alpha", "abc", "--beta", "1", "--A", "1", "--B", "1"],
        ["classify", "--eq", "eq99", "--B", "1"],
        ["classify", "--B", "1"],
        ["frobnicate", "--eq", "eq4"],
        ["classify", "--eq", "eq4", "--B", "0", "--z0", "1", "--zm1", "1"],
        ["classify", "--eq", "eq4", "--B", "1"],
        ["forbidden-list", "--eq", "eq4", "--B", "1", "--C-grid", ""],
        ["invariant", "--eq", "eq4", "--B", "1", "--z0", "0", "--zm1", "5"],
        ["invariant", "--eq", "lyness", "--alpha", "1", "--window", "1,2,3"],
    ],
)
def test_usage_errors_exit_2(argv):
    code, out, err = call(*argv)
    assert code == 2 and out == "" and err.startswith("error:")


def test_classify_second_order_payloads():
    code, out, _ = call("classify", "--eq", "eq9", "--B", "1", "--z0", "1", "--zm1", "1")
    assert out == "thm7-b C=2 lambda1=-1 lambda2=2\n"
    code, out, _ = call("classify", "--eq", "eq4", "--B", "1", "--z0", "1", "--zm1", "1", "--format", "json")
    assert json.loads(out) == {"tag": "thm2-iv-b", "C": [4.0, 0.0]}


def test_forbidden_list_rows():
    code, out, _ = call("forbidden-list", "--eq", "eq6", "--B", "1", "--n-max", "3", "--C-grid", "2")
    lines = out.splitlines()
    assert lines[0] == "branch,n,step,z0_re,z0_im,zm1_re,zm1_im"
    assert all(len(l.split(",")) == 7 for l in lines)
    geo = [l for l in lines if l.startswith("geometric")]
    assert [l.split(",")[3] for l in geo] == ["0.5", "0.75", "0.875"]
    assert "line-axis,,1,,,0,0" in lines


def test_forbidden_list_riccati():
    code, out, _ = call("forbidden-list", "--eq", "riccati", "--alpha", "0", "--beta", "1", "--A", "1", "--B", "1",
                        "--n-max", "3")
    rows = [l.split(",") for l in out.splitlines()[1:]]
    assert [r[0] for r in rows] == ["case6"] * 3
    assert float(rows[2][3]) == pytest.approx(-1 / 3)


def test_invariant_outputs():
    code, out, _ = call("invariant", "--eq", "eq4", "--B", "1", "--z0", "1", "--zm1", "1")
    assert out.splitlines()[1] == "4,0,0"
    code, out, _ = call("invariant", "--eq", "lyness", "--alpha", "1", "--window", "1,1", "--format", "json")
    assert json.loads(out)["invariant"] == [12.0, 0.0]


def test_verify_pass_and_fail_codes():
    code, out, _ = call("verify", "--eq", "eq7", "--samples", "3")
    assert code == 0 and out.splitlines()[-1] == "PASS 6/6"
    code, out, _ = call("verify", "--eq", "eq7", "--samples", "3", "--rtol", "1e-30")
    assert code == 1 and out.splitlines()[-1].startswith("FAIL")


def test_verify_lyness():
    code, out, _ = call("verify", "--eq", "lyness", "--k", "2", "--alpha", "1", "--samples", "5", "--rtol", "1e-10")
    assert code == 0 and out.splitlines()[-1] == "PASS 5/5"


def test_verify_deterministic():
    argv = ["verify", "--eq", "riccati", "--samples", "5", "--seed", "42"]
    assert call(*argv) == call(*argv)
    assert call(*argv)[1] != call("verify", "--eq", "riccati", "--samples", "5", "--seed", "7")[1]


def test_csv_numbers_round_trip():
    code, out, _ = call("orbit", "--eq", "eq5", "--B", "0.3+0.1i", "--z0", "0.7", "--zm1", "1.1-0.2i", "--n", "6")
    for line in out.splitlines()[1:]:
        _, re, im = line.split(",")
        for text in (re, im):
            assert format_real(float(text)) == text


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "rationaldiff", "classify", "--eq", "eq5", "--B", "1", "--z0", "-1", "--zm1", "3"],
        capture_output=True, text=True,
    )
    assert out.returncode == 0 and out.stdout == "thm3-iii\n"
