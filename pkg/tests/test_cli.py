import json
import subprocess
import sys
from fractions import Fraction

import pytest

from knotquivers import cli
from knotquivers.laurent import LaurentPoly
from knotquivers.quiver import AQ


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    report = json.loads(captured.out) if captured.out else None
    return code, report, captured.err


def test_knots(capsys):
    code, rep, _ = run(capsys, "knots")
    assert code == 0
    names = [row["name"] for row in rep["result"]["knots"]]
    assert "9_42" in names and rep["result"]["aliases"]["6_3"] == "6_3_optB"


def test_eval_trefoil(capsys):
    code, rep, _ = run(capsys, "eval", "--knot", "3_1", "--r", "1")
    assert code == 0 and rep["verdicts"] == {"sl1": True}
    p = LaurentPoly.from_json(rep["result"]["numerator"])
    a, q = AQ.gen("a"), AQ.gen("q")
    assert p == a * q ** -1 + a * q - a ** 2


def test_eval_pretty_and_subst(capsys):
    code, rep, _ = run(capsys, "eval", "--knot", "3_1", "--r", "1", "--subst", "a=q^2", "--pretty")
    assert code == 0
    assert rep["result"]["numerator"] == "q + q^3 - q^4"


def test_eval_unreduced(capsys):
    _, rep, _ = run(capsys, "eval", "--knot", "3_1", "--r", "2", "--unreduced")
    assert rep["result"]["reduced"] is False
    assert rep["result"]["denominator"] == "(q;q)_2"


def test_bottom_942(capsys):
    code, rep, _ = run(capsys, "bottom", "--knot", "9_42", "--r", "3")
    assert code == 0 and rep["verdicts"]["closed_form"] and rep["result"]["a_min"] == -4
    code, rep, _ = run(capsys, "bottom", "--knot", "9_42", "--r", "2", "--unreduced")
    assert code == 0 and rep["verdicts"]["closed_form"]


def test_rewrite_and_quiver_commands(capsys, tmp_path):
    path = tmp_path / "q.json"
    code, rep, _ = run(capsys, "rewrite", "--knot", "3_1", "--emit", str(path))
    assert code == 0 and rep["result"]["quiver"]["C"] == [[0, 1, 1], [1, 2, 2], [1, 2, 3]]
    code, rep, _ = run(capsys, "quiver-eval", "--file", str(path), "--r", "1", "--pretty")
    assert code == 0 and rep["result"]["poly"] == "a*q^-1 + a*q - a^2"
    code, rep, _ = run(capsys, "quiver-series", "--file", str(path), "--max-x", "2", "--max-q", "3")
    assert code == 0 and rep["verdicts"]["matches_quiver_form"]
    code, rep, _ = run(capsys, "dt", "--file", str(path), "--max-deg", "2", "--max-q", "3")
    assert code == 0 and rep["verdicts"] == {"integral": True, "nonnegative": True, "product_round_trip": True}


def test_rewrite_all_orderings(capsys, tmp_path):
    code, rep, _ = run(capsys, "rewrite", "--knot", "5_1", "--all-orderings", "--emit", str(tmp_path / "q.json"))
    assert code == 0 and rep["verdicts"]["shared_diagonal"]
    assert len(list(tmp_path.glob("q.*.json"))) == rep["result"]["count"]


def test_dt_reports_negativity(capsys, tmp_path):
    path = tmp_path / "q.json"
    run(capsys, "rewrite", "--knot", "4_1", "--emit", str(path))
    code, rep, _ = run(capsys, "dt", "--file", str(path), "--max-deg", "2", "--max-q", "3")
    assert code == 1
    assert rep["verdicts"]["integral"] and not rep["verdicts"]["nonnegative"]


def test_lmov(capsys):
    code, rep, _ = run(capsys, "lmov", "--knot", "3_1", "--max-r", "2")
    assert code == 0 and rep["result"]["bps"]


def test_homology(capsys):
    code, rep, _ = run(capsys, "homology", "check", "--prop", "dims", "--r", "2")
    assert code == 0 and rep["result"]["results"][0]["value"] == 209
    code, rep, _ = run(capsys, "homology", "check", "--prop", "self-sym-s2")
    assert code == 1
    code, rep, _ = run(capsys, "homology", "eval", "--r", "2", "--grading", "aqtrtc", "--pretty")
    assert code == 0 and "t_r" in rep["result"]["superpolynomial"]


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["eval", "--knot", "11_1", "--r", "1"],
        ["eval", "--knot", "3_1", "--r", "-1"],
        ["eval", "--knot", "3_1", "--r", "1", "--subst", "b=q"],
        ["eval", "--knot", "3_1", "--r", "1", "--subst", "a=q^x"],
        ["rewrite", "--knot", "5_1", "--ordering", "1,1,2"],
        ["rewrite", "--knot", "9_42", "--all-orderings", "--cap", "1"],
        ["quiver-eval", "--file", "/nonexistent.json", "--r", "1"],
        ["homology", "check"],
        ["homology", "eval", "--r", "3", "--grading", "aqtrtc"],
        ["eval", "--knot", "3_1", "--r", "1", "--json", "--pretty"],
    ],
)
def test_usage_errors(capsys, argv):
    code, rep, err = run(capsys, *argv)
    assert code == 2 and rep is None
    assert "usage error" in err


def test_timing_goes_to_stderr(capsys):
    code, rep, err = run(capsys, "knots", "--timing")
    assert code == 0 and "elapsed" in err and "elapsed" not in json.dumps(rep)


@pytest.mark.parametrize(
    "text,expected",
    [("q^2", AQ.monomial(1, q=2)), ("-a*q^(1/2)", AQ.monomial(-1, a=1, q=Fraction(1, 2))), ("3*q^-1", AQ.monomial(3, q=-1))],
)
def test_parse_monomial(text, expected):
    assert cli.parse_monomial(text) == expected


def test_report_is_byte_identical_across_processes():
    argv = ["eval", "--knot", "4_1", "--r", "2", "--unreduced"]
    outs = []
    for seed in ("0", "7"):
        proc = subprocess.run(
            [sys.executable, "-m", "knotquivers", *argv],
            capture_output=True,
            env={"PYTHONHASHSEED": seed, "PATH": ""},
        )
        assert proc.returncode == 0
        outs.append(proc.stdout)
    assert outs[0] == outs[1]
