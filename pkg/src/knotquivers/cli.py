"""Command-line interface.

Every command prints one JSON report on stdout with sorted keys, so two runs
on the same inputs give identical bytes.  Exit codes: 0 ok, 1 a verification
failed, 2 usage error.  Polynomials are written with half-unit exponents
(``e2``); ``--pretty`` renders them as strings instead.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import subprocess
import sys
import tempfile
import time
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from . import acceptance, ansatz, homology, knotdb, lmov, rewriter
from .laurent import LaurentPoly
from .quiver import AQ, QuiverError, eval_quiver_form, load_quiver, node_specialization, qq, quiver_series, save_quiver

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# formatting


class _Out:
    def __init__(self, pretty: bool):
        self.pretty = pretty

    def poly(self, p: LaurentPoly):
        return p.pretty() if self.pretty else p.to_json()


def _num(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    return x


_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^\(?(-?\d+(?:/\d+)?)\)?)?$")


def parse_monomial(text: str, ring=AQ) -> LaurentPoly:
    """'q^2', '-a*q^(1/2)', '3*q^-1' -> monomial over ``ring``."""
    coeff = 1
    exps = {}
    for part in text.replace(" ", "").split("*"):
        if not part:
            raise UsageError(f"bad monomial {text!r}")
        if re.fullmatch(r"-?\d+", part):
            coeff *= int(part)
            continue
        sign = 1
        if part.startswith("-"):
            sign, part = -1, part[1:]
        m = _FACTOR.match(part)
        if not m or m.group(1) not in ring.index:
            raise UsageError(f"bad factor {part!r} in {text!r}")
        coeff *= sign
        exps[m.group(1)] = exps.get(m.group(1), 0) + Fraction(m.group(2) or 1)
    return ring.monomial(coeff, **exps)


def _parse_subst(items: List[str]):
    mapping = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError(f"--subst expects VAR=MONOMIAL, got {item!r}")
        var, value = item.split("=", 1)
        if var not in AQ.index:
            raise UsageError(f"unknown variable {var!r}")
        mapping[var] = parse_monomial(value)
    return mapping


def _knot(name: str) -> knotdb.SpecialFormData:
    try:
        return knotdb.get_knot(name)
    except knotdb.UnknownKnotError as exc:
        raise UsageError(str(exc)) from exc


def _quiver(path: str):
    try:
        return load_quiver(path)
    except FileNotFoundError as exc:
        raise UsageError(f"no such file: {path}") from exc
    except QuiverError as exc:
        raise UsageError(str(exc)) from exc


def _nonneg(value: int, flag: str) -> int:
    if value < 0:
        raise UsageError(f"{flag} must be nonnegative")
    return value


# ---------------------------------------------------------------------------
# commands; each returns (result, verdicts)


def cmd_knots(args, out):
    rows = []
    for name in knotdb.knot_names():
        data = knotdb.get_knot(name)
        rows.append(
            {
                "name": name,
                "nodes": data.k,
                "levels": list(data.n),
                "crossings": knotdb.crossing_number(name),
                "quiver_size": rewriter.predicted_size(data),
            }
        )
    return {"knots": rows, "aliases": dict(sorted(knotdb.ALIASES.items()))}, {}


def cmd_eval(args, out):
    data = _knot(args.knot)
    p = ansatz.eval_special_form(data, _nonneg(args.r, "--r"))
    verdicts = {"sl1": ansatz.sl1_check(p)}
    if args.unreduced:
        p = ansatz.unreduced(p)
    poly = p.poly
    mapping = _parse_subst(args.subst)
    if mapping:
        poly = poly.substitute(mapping)
    result = {"knot": data.name, "r": args.r, "reduced": p.reduced, "numerator": out.poly(poly)}
    if not p.reduced:
        result["denominator"] = f"(q;q)_{p.denominator}"
    return result, verdicts


def cmd_bottom(args, out):
    data = _knot(args.knot)
    r = _nonneg(args.r, "--r")
    p = ansatz.eval_special_form(data, r)
    if args.unreduced:
        p = ansatz.unreduced(p)
    a_min, row = ansatz.bottom_row(p)
    result = {"knot": data.name, "r": r, "reduced": p.reduced, "a_min": _num(a_min), "row": out.poly(row)}
    verdicts = {}
    if not p.reduced:
        result["denominator"] = f"(q;q)_{r}"
    if data.name == "9_42" and r >= 1:
        if p.reduced:
            ca, crow = ansatz.bottom_row_942_reduced(r)
            verdicts["closed_form"] = a_min == ca and row == crow
        else:
            ca, cnum, cden = ansatz.bottom_row_942_unreduced(r)
            verdicts["closed_form"] = a_min == ca and row * cden == cnum * qq(r).to_ring(row.ring)
    return result, verdicts


def _parse_ordering(text: str, k: int):
    try:
        order = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad ordering {text!r}") from exc
    if sorted(order) != list(range(1, k + 1)):
        raise UsageError(f"ordering must be a permutation of 1..{k}")
    return order


def cmd_rewrite(args, out):
    data = _knot(args.knot)
    check_r = rewriter.default_check_r(data) if args.check_r is None else _nonneg(args.check_r, "--check-r")
    if args.all_orderings:
        if args.ordering:
            raise UsageError("--ordering and --all-orderings are exclusive")
        try:
            found = rewriter.enumerate_orderings(data, r_check=check_r, cap=args.cap)
        except rewriter.RewriteError as exc:
            if exc.first_bad_r is None and "cap" in str(exc):
                raise UsageError(str(exc)) from exc
            return {"knot": data.name, "error": str(exc), "first_bad_r": exc.first_bad_r}, {"sound": False}
        quivers = []
        for i, (plan, Q) in enumerate(found):
            quivers.append({"ordering": list(plan.ordering), "quiver": Q.to_dict(), "diagonal": rewriter.diagonal_multiset(Q)})
            if args.emit:
                path = Path(args.emit)
                save_quiver(Q, path.with_name(f"{path.stem}.{i + 1}{path.suffix}"))
        diags = {tuple(q["diagonal"]) for q in quivers}
        result = {"knot": data.name, "checked_up_to": check_r, "count": len(quivers), "quivers": quivers}
        return result, {"sound": True, "shared_diagonal": len(diags) == 1}
    plan = rewriter.RewritePlan(_parse_ordering(args.ordering, data.k)) if args.ordering else None
    try:
        res = rewriter.rewrite(data, plan, check_r=check_r)
    except rewriter.RewriteError as exc:
        return {"knot": data.name, "error": str(exc), "first_bad_r": exc.first_bad_r}, {"sound": False}
    if args.emit:
        save_quiver(res.quiver, args.emit)
    result = res.to_dict()
    result["knot"] = data.name
    result["level_profile"] = {str(k): v for k, v in rewriter.level_profile(res.quiver).items()}
    return result, {"sound": True}


def cmd_quiver_eval(args, out):
    Q = _quiver(args.file)
    p = eval_quiver_form(Q, _nonneg(args.r, "--r"))
    return {"m": Q.m, "r": args.r, "poly": out.poly(p)}, {}


def cmd_quiver_series(args, out):
    Q = _quiver(args.file)
    max_x, max_q = _nonneg(args.max_x, "--max-x"), args.max_q
    series = quiver_series(Q.C, node_specialization(Q), max_x, max_q)
    # x^r coefficient times (q;q)_r must be the quiver form up to q^max_q
    agree = True
    for r in range(max_x + 1):
        coeff = series.coefficient("x", r).to_ring(AQ) * qq(r)
        agree &= coeff.truncate("q", max_q) == eval_quiver_form(Q, r).truncate("q", max_q)
    return {"m": Q.m, "max_x": max_x, "max_q": max_q, "series": out.poly(series)}, {"matches_quiver_form": agree}


def cmd_lmov(args, out):
    data = _knot(args.knot)
    try:
        table = lmov.knot_bps(data, _nonneg(args.max_r, "--max-r"))
    except lmov.LMOVViolation as exc:
        return {"knot": data.name, "error": str(exc)}, {"integral": False}
    return {"knot": data.name, "max_r": args.max_r, "bps": table.to_json()}, {"integral": True}


def cmd_dt(args, out):
    Q = _quiver(args.file)
    max_deg = _nonneg(args.max_deg, "--max-deg")
    try:
        table = lmov.dt_invariants(Q.C, max_deg, require_nonnegative=False)
    except lmov.DTError as exc:
        return {"m": Q.m, "error": str(exc)}, {"integral": False}
    rebuilt = lmov.rebuild_product(table, max_deg, args.max_q) == lmov.multivariate_quiver_series(Q.C, max_deg, args.max_q)
    result = {"m": Q.m, "max_deg": max_deg, "max_q": args.max_q, "omega": table.to_json()}
    return result, {"integral": True, "nonnegative": table.nonnegative(), "product_round_trip": rebuilt}


def cmd_homology(args, out):
    if args.action == "eval":
        r = _nonneg(args.r if args.r is not None else 1, "--r")
        if args.grading == "aqtrtc":
            if r != 2:
                raise UsageError("the (a,q,t_r,t_c) grading is only available for r = 2")
            P = homology.s2_quadruply_graded()
        else:
            P = homology.superpoly_942(r)
        return {"r": r, "grading": args.grading, "superpolynomial": out.poly(P)}, {}
    return _homology_check(args, out)


def _verdict(v: homology.Verdict, out, **extra):
    d = dict(extra)
    d["holds"] = v.holds
    d["detail"] = v.detail
    d["quotient"] = out.poly(v.quotient) if v.quotient is not None else None
    return d


def _homology_check(args, out):
    prop = args.prop
    rows = []
    if prop == "hp-lemma":
        ms = [args.m] if args.m is not None else range(5)
        os_ = [args.o] if args.o is not None else range(-2, 3)
        for o in os_:
            for m in ms:
                for which in (1, 2):
                    rows.append(_verdict(homology.hp_lemma(o, _nonneg(m, "--m"), which), out, o=o, m=m, identity=which))
    elif prop == "hp-cat":
        ms = [args.m] if args.m is not None else range(7)
        os_ = [args.o] if args.o is not None else range(-3, 4)
        for o in os_:
            for m in ms:
                rows.append(_verdict(homology.check_hp_categorification(o, _nonneg(m, "--m")), out, o=o, m=m))
    elif prop in ("pos-diff", "neg-diff"):
        check = homology.check_positive_differentials if prop == "pos-diff" else homology.check_negative_differentials
        rs = [args.r] if args.r is not None else range(1, 4)
        for r in rs:
            ls = [args.l] if args.l is not None else range(r)
            for l in ls:
                if not 0 <= l < r:
                    raise UsageError("need 0 <= l < r")
                rows.append(_verdict(check(r, l), out, r=r, l=l))
    elif prop == "self-sym-s2":
        rows.append(_verdict(homology.check_s2_self_symmetry(), out))
    elif prop == "decat-s2":
        for name, v in sorted(homology.check_s2_decategorification().items()):
            rows.append(_verdict(v, out, form=name))
    elif prop == "dims":
        rs = [args.r] if args.r is not None else range(1, 4)
        for r in rs:
            value = homology.dimension(_nonneg(r, "--r"))
            row = {"r": r, "value": value, "all_ones": None}
            if r <= 4:
                row["all_ones"] = homology.all_ones(homology.superpoly_942(r))
            row["holds"] = row["all_ones"] in (None, value)
            rows.append(row)
    elif prop == "decat":
        rs = [args.r] if args.r is not None else range(5)
        data = knotdb.get_knot("9_42")
        for r in rs:
            ok = homology.decategorify(homology.superpoly_942(_nonneg(r, "--r"))) == ansatz.eval_special_form(data, r).poly
            rows.append({"r": r, "holds": ok})
    holds = all(row["holds"] for row in rows)
    return {"prop": prop, "results": rows}, {"holds": holds}


def cmd_verify_all(args, out):
    golden = None
    if args.golden:
        golden = json.loads(Path(args.golden).read_text())
    only = None
    if args.only:
        only = {int(x) for x in args.only.split(",")}
    reports = acceptance.run_all(quick=args.level == "quick", golden=golden, only=only)
    for rep in reports:
        print(rep.line(), file=sys.stderr)
    result = {"level": args.level, "criteria": [rep.to_json() for rep in reports]}
    return result, {f"criterion_{rep.number}": rep.passed for rep in reports}


COMMANDS = {
    "knots": cmd_knots,
    "eval": cmd_eval,
    "bottom": cmd_bottom,
    "rewrite": cmd_rewrite,
    "quiver-eval": cmd_quiver_eval,
    "quiver-series": cmd_quiver_series,
    "lmov": cmd_lmov,
    "dt": cmd_dt,
    "homology": cmd_homology,
    "verify-all": cmd_verify_all,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON with half-unit exponents (default)")
    fmt.add_argument("--pretty", action="store_true", help="render polynomials as strings")
    common.add_argument("--timing", action="store_true", help="report elapsed time on stderr")

    p = _Parser(prog="knotquivers", description="Knots-quivers correspondence toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("knots", parents=[common], help="list registered knots")

    s = sub.add_parser("eval", parents=[common], help="colored HOMFLY-PT polynomial")
    s.add_argument("--knot", required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--unreduced", action="store_true")
    s.add_argument("--subst", action="append", metavar="VAR=MONOMIAL")

    s = sub.add_parser("bottom", parents=[common], help="bottom row")
    s.add_argument("--knot", required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--unreduced", action="store_true")

    s = sub.add_parser("rewrite", parents=[common], help="rewrite special form into a quiver")
    s.add_argument("--knot", required=True)
    s.add_argument("--ordering", metavar="CSV")
    s.add_argument("--all-orderings", action="store_true")
    s.add_argument("--cap", type=int, default=720)
    s.add_argument("--check-r", type=int)
    s.add_argument("--emit", metavar="PATH")

    s = sub.add_parser("quiver-eval", parents=[common], help="quiver form at color r")
    s.add_argument("--file", required=True)
    s.add_argument("--r", type=int, required=True)

    s = sub.add_parser("quiver-series", parents=[common], help="truncated quiver generating series")
    s.add_argument("--file", required=True)
    s.add_argument("--max-x", type=int, required=True)
    s.add_argument("--max-q", type=int, required=True)

    s = sub.add_parser("lmov", parents=[common], help="BPS numbers of a knot")
    s.add_argument("--knot", required=True)
    s.add_argument("--max-r", type=int, required=True)

    s = sub.add_parser("dt", parents=[common], help="DT invariants of a quiver")
    s.add_argument("--file", required=True)
    s.add_argument("--max-deg", type=int, required=True)
    s.add_argument("--max-q", type=int, required=True)

    s = sub.add_parser("homology", parents=[common], help="9_42 colored homology")
    s.add_argument("action", choices=["eval", "check"])
    s.add_argument("--r", type=int)
    s.add_argument("--l", type=int)
    s.add_argument("--m", type=int)
    s.add_argument("--o", type=int)
    s.add_argument("--grading", choices=["aqtQ", "aqtrtc"], default="aqtQ")
    s.add_argument(
        "--prop",
        choices=["hp-lemma", "hp-cat", "pos-diff", "neg-diff", "self-sym-s2", "decat-s2", "dims", "decat"],
    )

    s = sub.add_parser("verify-all", parents=[common], help="run the acceptance battery")
    s.add_argument("--level", choices=["quick", "full"], default="quick")
    s.add_argument("--only", metavar="CSV", help="criterion numbers to run")
    s.add_argument("--golden", metavar="PATH", help="reference special-form data")
    return p


def run(argv: Optional[List[str]] = None):
    """Parse and execute; returns (exit code, report or None)."""
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        if args.command == "homology" and args.action == "check" and not args.prop:
            raise UsageError("homology check needs --prop")
        out = _Out(args.pretty)
        start = time.perf_counter()
        result, verdicts = COMMANDS[args.command](args, out)
        elapsed = time.perf_counter() - start
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE, None
    if args.timing:
        print(f"elapsed: {elapsed:.3f}s", file=sys.stderr)
    inputs = {k: v for k, v in sorted(vars(args).items()) if k not in ("json", "pretty", "timing")}
    digest = hashlib.sha256(json.dumps(inputs, sort_keys=True, default=str).encode()).hexdigest()
    report = {
        "command": args.command,
        "argv": argv,
        "inputs_sha256": digest,
        "result": result,
        "verdicts": verdicts,
    }
    code = OK if all(verdicts.values()) else FAILED
    return code, report


def render(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=1) + "\n"


def main(argv: Optional[List[str]] = None) -> int:
    code, report = run(argv)
    if report is not None:
        sys.stdout.write(render(report))
    return code


# ---------------------------------------------------------------------------


def probe_commands(workdir: str, quick: bool = True) -> List[List[str]]:
    qfile = str(Path(workdir) / "q31.json")
    cmds = [
        ["knots"],
        ["eval", "--knot", "3_1", "--r", "1", "--json"],
        ["eval", "--knot", "4_1", "--r", "2", "--unreduced", "--subst", "a=q^2", "--pretty"],
        ["bottom", "--knot", "9_42", "--r", "3"],
        ["bottom", "--knot", "9_42", "--r", "2", "--unreduced"],
        ["rewrite", "--knot", "3_1", "--emit", qfile],
        ["rewrite", "--knot", "5_1", "--ordering", "1,2,3"],
        ["rewrite", "--knot", "5_1", "--all-orderings", "--cap", "6"],
        ["quiver-eval", "--file", qfile, "--r", "2"],
        ["quiver-series", "--file", qfile, "--max-x", "2", "--max-q", "4"],
        ["lmov", "--knot", "3_1", "--max-r", "2"],
        ["dt", "--file", qfile, "--max-deg", "2", "--max-q", "3"],
        ["homology", "eval", "--r", "1"],
        ["homology", "eval", "--r", "2", "--grading", "aqtrtc"],
        ["homology", "check", "--prop", "dims", "--r", "2"],
        ["homology", "check", "--prop", "hp-lemma", "--m", "2", "--o", "0"],
        ["homology", "check", "--prop", "pos-diff", "--r", "2", "--l", "1"],
        ["homology", "check", "--prop", "self-sym-s2"],
    ]
    if not quick:
        cmds.append(["verify-all", "--level", "quick", "--only", "3,7"])
    return cmds


def determinism_probe(quick: bool = True):
    """Run every probe command twice in fresh interpreters with different hash seeds."""
    results = []
    with tempfile.TemporaryDirectory() as tmp:
        for argv in probe_commands(tmp, quick):
            outputs = []
            for seed in ("1", "2"):
                env = dict(os.environ, PYTHONHASHSEED=seed)
                proc = subprocess.run(
                    [sys.executable, "-m", "knotquivers", *argv], capture_output=True, env=env, cwd=tmp
                )
                outputs.append((proc.returncode, proc.stdout))
            results.append((argv, outputs[0] == outputs[1] and bool(outputs[0][1])))
    return results


if __name__ == "__main__":
    sys.exit(main())
