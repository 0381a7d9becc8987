"""The acceptance battery, shared by ``verify-all`` and the test suite.

Each criterion returns a list of named sub-checks.  ``quick`` lowers the
r-bounds by one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from . import ansatz, homology, knotdb, lmov, rewriter
from .laurent import LaurentPoly
from .quiver import AQ, eval_quiver_form, qq

C51_FIRST = (
    (0, 1, 1, 3, 3),
    (1, 2, 2, 3, 4),
    (1, 2, 3, 3, 4),
    (3, 3, 3, 4, 4),
    (3, 4, 4, 4, 5),
)
C51_SECOND = (
    (0, 1, 1, 3, 3),
    (1, 2, 2, 3, 3),
    (1, 2, 3, 4, 4),
    (3, 3, 4, 4, 4),
    (3, 3, 4, 4, 5),
)
A_MIN_942 = (-1, -3, -4, -6, -7, -9, -10)
DIMENSIONS_942 = (9, 209, 4185, 105633, 2651049)


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class CriterionReport:
    number: int
    title: str
    checks: List[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.ok]

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        n = len(self.checks)
        tail = f"{n - len(self.failures())}/{n} checks"
        if not self.passed:
            tail += "; failing: " + ", ".join(c.name for c in self.failures())
        return f"[{status}] {self.number:2d}. {self.title} ({tail})"

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.passed,
            "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in self.checks],
        }


def _bound(full: int, quick: bool) -> int:
    return full - 1 if quick else full


def _is_ten_crossing(data: knotdb.SpecialFormData) -> bool:
    return (knotdb.crossing_number(data.name) or 0) >= 10 or max(data.n) >= 3


# ---------------------------------------------------------------------------


def criterion_1(quick=False, golden: Optional[Dict[str, dict]] = None) -> CriterionReport:
    rep = CriterionReport(1, "golden special-form data and family generators")
    for name in knotdb.knot_names():
        data = knotdb.get_knot(name)
        try:
            data.validate()
            back = knotdb.SpecialFormData.from_dict(data.to_dict())
            ok = knotdb.same_data(back, data)
        except knotdb.ValidationError as exc:
            rep.checks.append(Check(f"valid {name}", False, str(exc)))
            continue
        rep.checks.append(Check(f"valid {name}", ok))
        if golden is not None:
            ref = golden.get(name)
            d = data.to_dict()
            same = ref is not None and all(d[k] == ref[k] for k in ("C", "n", "a", "q", "l", "r"))
            rep.checks.append(Check(f"golden {name}", same))
    for (family, p), name in sorted(knotdb.FAMILY_INSTANCES.items()):
        gen = knotdb.torus_2_strand(p) if family == "torus" else knotdb.twist_knot(p)
        rep.checks.append(Check(f"{family} {p} = {name}", knotdb.same_data(gen, knotdb.get_knot(name))))
    return rep


def criterion_2(quick=False) -> CriterionReport:
    rep = CriterionReport(2, "P_0 = 1 and sl(1) triviality for every knot")
    for name in knotdb.knot_names():
        data = knotdb.get_knot(name)
        top = _bound(3 if _is_ten_crossing(data) else 4, quick)
        p0 = ansatz.eval_special_form(data, 0).poly == AQ.one()
        sl1 = all(ansatz.sl1_check(ansatz.eval_special_form(data, r)) for r in range(1, top + 1))
        rep.checks.append(Check(f"{name} r<={top}", p0 and sl1, "" if p0 else "P_0 != 1"))
    return rep


def criterion_3(quick=False) -> CriterionReport:
    rep = CriterionReport(3, "9_42 special form equals its multinomial form")
    data = knotdb.get_knot("9_42")
    for r in range(_bound(5, quick) + 1):
        ok = ansatz.eval_special_form(data, r).poly == ansatz.eval_942_multinomial_form(r).poly
        rep.checks.append(Check(f"r={r}", ok))
    return rep


def criterion_4(quick=False) -> CriterionReport:
    rep = CriterionReport(4, "9_42 bottom rows")
    data = knotdb.get_knot("9_42")
    for r in range(1, _bound(7, quick) + 1):
        p = ansatz.eval_special_form(data, r)
        a_min, row = ansatz.bottom_row(p)
        ca, crow = ansatz.bottom_row_942_reduced(r)
        ok = a_min == ca == A_MIN_942[r - 1] and row == crow
        rep.checks.append(Check(f"reduced r={r}", ok, f"a_min={a_min}"))
    for r in range(1, _bound(6, quick) + 1):
        u = ansatz.unreduced(ansatz.eval_special_form(data, r))
        a_min, num = ansatz.bottom_row(u)
        ca, cnum, cden = ansatz.bottom_row_942_unreduced(r)
        # num / (q;q)_r == cnum / cden
        q_qq = qq(r).to_ring(num.ring)
        ok = a_min == ca and num * cden == cnum * q_qq
        rep.checks.append(Check(f"unreduced r={r}", ok, f"a_min={a_min}"))
    return rep


def criterion_5(quick=False) -> CriterionReport:
    rep = CriterionReport(5, "rewriter size law")
    for name in knotdb.knot_names():
        data = knotdb.get_knot(name)
        res = rewriter.rewrite(data)
        rep.checks.append(Check(f"{name} size {res.quiver.m}", res.quiver.m == rewriter.predicted_size(data)))
    q942 = rewriter.rewrite(knotdb.get_knot("9_42")).quiver
    profile = rewriter.level_profile(q942)
    rep.checks.append(Check("9_42 profile", q942.m == 33 and profile == {1: 9, 2: 24}, str(profile)))
    return rep


def criterion_6(quick=False) -> CriterionReport:
    rep = CriterionReport(6, "rewriter soundness")
    for name in knotdb.knot_names():
        data = knotdb.get_knot(name)
        top = _bound(4 if data.k <= 8 else 3, quick)
        try:
            rewriter.rewrite(data, check_r=top)
            rep.checks.append(Check(f"{name} r<={top}", True))
        except rewriter.RewriteError as exc:
            rep.checks.append(Check(f"{name} r<={top}", False, str(exc)))
    return rep


def criterion_7(quick=False) -> CriterionReport:
    rep = CriterionReport(7, "5_1 ordering-induced quivers")
    data = knotdb.get_knot("5_1")
    c1 = rewriter.rewrite(data, rewriter.RewritePlan((1, 2, 3))).quiver.C
    c2 = rewriter.rewrite(data, rewriter.RewritePlan((1, 3, 2))).quiver.C
    rep.checks.append(Check("ordering 1,2,3 gives first matrix", c1 == C51_FIRST))
    rep.checks.append(Check("ordering 1,3,2 gives second matrix", c2 == C51_SECOND))
    found = rewriter.enumerate_orderings(data, r_check=_bound(4, quick))
    diags = {tuple(rewriter.diagonal_multiset(Q)) for _, Q in found}
    rep.checks.append(Check("shared diagonal multiset", len(diags) == 1, str(sorted(diags))))
    return rep


def criterion_8(quick=False) -> CriterionReport:
    rep = CriterionReport(8, "LMOV integrality and DT invariants")
    top = _bound(3, quick)
    for name in knotdb.knot_names():
        try:
            lmov.knot_bps(knotdb.get_knot(name), top)
            rep.checks.append(Check(f"LMOV {name} r<={top}", True))
        except lmov.LMOVViolation as exc:
            rep.checks.append(Check(f"LMOV {name} r<={top}", False, str(exc)))
    data = knotdb.get_knot("3_1")
    A = [ansatz.unreduced(ansatz.eval_special_form(data, r)).poly for r in range(5)]
    back = lmov.free_energy_to_series(lmov.free_energy_numerators(A), 4, A[0].ring)
    rep.checks.append(Check("exp/log round trip to x^4", back == A))
    for name in ("3_1", "4_1", "5_1"):
        Q = rewriter.rewrite(knotdb.get_knot(name)).quiver
        try:
            table = lmov.dt_invariants(Q.C, 3, require_nonnegative=False)
        except lmov.DTError as exc:
            rep.checks.append(Check(f"DT integral {name}", False, str(exc)))
            continue
        rep.checks.append(Check(f"DT integral {name}", True))
        neg = sorted(k for k, v in table.entries.items() if v < 0)
        rep.checks.append(Check(f"DT nonnegative {name}", not neg, f"{len(neg)} negative" if neg else ""))
        max_q = 4
        ok = lmov.rebuild_product(table, 3, max_q) == lmov.multivariate_quiver_series(Q.C, 3, max_q)
        rep.checks.append(Check(f"DT product round trip {name}", ok))
    return rep


def criterion_9(quick=False) -> CriterionReport:
    rep = CriterionReport(9, "9_42 homology dimensions")
    for r, want in enumerate(DIMENSIONS_942, start=1):
        rep.checks.append(Check(f"closed form r={r}", homology.dimension(r) == want))
    for r in range(1, _bound(3, quick) + 1):
        got = homology.all_ones(homology.superpoly_942(r))
        rep.checks.append(Check(f"all-ones r={r}", got == DIMENSIONS_942[r - 1], str(got)))
    return rep


def criterion_10(quick=False) -> CriterionReport:
    rep = CriterionReport(10, "decategorification of the colored superpolynomial")
    data = knotdb.get_knot("9_42")
    for r in range(_bound(4, quick) + 1):
        ok = homology.decategorify(homology.superpoly_942(r)) == ansatz.eval_special_form(data, r).poly
        rep.checks.append(Check(f"r={r}", ok))
    return rep


def criterion_11(quick=False) -> CriterionReport:
    rep = CriterionReport(11, "HP categorification and HP lemma")
    m_cat = _bound(6, quick)
    rep.checks.append(
        Check(
            f"categorification m<={m_cat}",
            all(homology.check_hp_categorification(o, m).holds for o in range(-3, 4) for m in range(m_cat + 1)),
        )
    )
    m_lem = _bound(4, quick)
    for which in (1, 2):
        bad = [
            (o, m)
            for o in range(-2, 3)
            for m in range(m_lem + 1)
            if not homology.hp_lemma(o, m, which).holds
        ]
        rep.checks.append(Check(f"lemma identity {which} m<={m_lem}", not bad, str(bad) if bad else ""))
    return rep


def criterion_12(quick=False) -> CriterionReport:
    rep = CriterionReport(12, "colored differentials")
    top = _bound(3, quick)
    for r in range(1, top + 1):
        for l in range(r):
            rep.checks.append(Check(f"positive r={r} l={l}", homology.check_positive_differentials(r, l).holds))
            rep.checks.append(Check(f"negative r={r} l={l}", homology.check_negative_differentials(r, l).holds))
    return rep


def criterion_13(quick=False) -> CriterionReport:
    rep = CriterionReport(13, "S^2 superpolynomials")
    decat = homology.check_s2_decategorification()
    rep.checks.append(Check("version 1 decategorifies", decat["version1"].holds))
    rep.checks.append(Check("version 2 decategorifies", decat["version2"].holds, decat["version2"].detail))
    rep.checks.append(Check("quadruply graded form decategorifies", decat["quadruply_graded"].holds))
    sym = homology.check_s2_self_symmetry()
    rep.checks.append(Check("quadruply graded self-symmetry", sym.holds, sym.detail))
    return rep


def criterion_14(quick=False) -> CriterionReport:
    from .cli import determinism_probe

    rep = CriterionReport(14, "CLI determinism")
    for argv, same in determinism_probe(quick=quick):
        rep.checks.append(Check(" ".join(argv), same))
    return rep


CRITERIA: Dict[int, Callable[..., CriterionReport]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
    11: criterion_11,
    12: criterion_12,
    13: criterion_13,
    14: criterion_14,
}


def run_all(quick=False, golden=None, only=None) -> List[CriterionReport]:
    out = []
    for n, fn in CRITERIA.items():
        if only and n not in only:
            continue
        out.append(fn(quick=quick, golden=golden) if n == 1 else fn(quick=quick))
    return out
