"""Colored HOMFLY-PT homology of 9_42 and its structural checks.

Poincare polynomials live in the ring (a, q, t, Q); the quadruply graded S^2 form
uses (a, q, t_r, t_c).  Every denominator (qt^2; qt^2)_k in the formulas is
cancelled against a q-multinomial in the base qt^2 before anything is
multiplied, so all work stays inside the polynomial ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Optional

from .laurent import (
    LaurentPoly,
    PolyRing,
    divide_by_one_plus_monomial,
    q_binomial,
    q_multinomial,
    q_pochhammer,
)

R4 = PolyRing(["a", "q", "t", "Q"])
RS2 = PolyRing(["a", "q", "t"])
RTT = PolyRing(["a", "q", "t_r", "t_c"])

C942 = ((2, 2, 0, 2, 2), (2, 4, 0, 4, 4), (0, 0, 0, 0, 0), (2, 4, 0, 4, 4), (2, 4, 0, 4, 5))


def _m(ring: PolyRing, coeff=1, **exps) -> LaurentPoly:
    return ring.monomial(coeff, **exps)


@dataclass(frozen=True)
class DifferentialDegree:
    """A differential D = 1 + m, stored through its monomial m."""

    name: str
    monomial: LaurentPoly

    def poly(self) -> LaurentPoly:
        return 1 + self.monomial


def D(i: int, ring: PolyRing = R4) -> DifferentialDegree:
    """D_i = 1 + a q^-i t^(3-2i) Q^-1."""
    return DifferentialDegree(f"D_{i}", _m(ring, a=1, q=-i, t=3 - 2 * i, Q=-1))


_S2_DIFFS = {1: (1, -1), 0: (0, -3), -2: (-2, -5), -3: (-3, -7)}
_S2_TR = {1: -1, 0: -1, -2: -3, -3: -3}


def d(n: int, ring: PolyRing = RS2) -> DifferentialDegree:
    """The S^2 differentials d_1, d_0, d_-2, d_-3 in the (a, q, t) grading."""
    qe, te = _S2_DIFFS[n]
    return DifferentialDegree(f"d_{n}", _m(ring, a=-1, q=qe, t=te))


def D_quad(n: int) -> DifferentialDegree:
    """The quadruply graded S^2 differentials in (a, q, t_r, t_c)."""
    qe, te = _S2_DIFFS[n]
    return DifferentialDegree(f"D_{n}", _m(RTT, a=-1, q=qe, t_r=_S2_TR[n], t_c=te))


@dataclass
class Verdict:
    holds: bool
    quotient: Optional[LaurentPoly]
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "detail": self.detail,
            "quotient": self.quotient.to_json() if self.quotient is not None else None,
        }


def check_mod_divisibility(P1: LaurentPoly, P2: LaurentPoly, Dd: DifferentialDegree) -> Verdict:
    """P1 mod D = P2: P1 - P2 = D Y with Y having nonnegative integer coefficients."""
    if P1.ring != P2.ring:
        raise ValueError("P1 and P2 live in different rings")
    diff = P1 - P2
    Y = divide_by_one_plus_monomial(diff, Dd.monomial.to_ring(P1.ring))
    if Y is None:
        return Verdict(False, None, f"not divisible by {Dd.name}")
    if not (Y.has_integer_coeffs() and Y.has_nonneg_coeffs()):
        return Verdict(False, Y, "quotient has negative or non-integer coefficients")
    return Verdict(True, Y)


# ---------------------------------------------------------------------------
# HP and the r-colored superpolynomial


def _b(ring: PolyRing = R4) -> LaurentPoly:
    return _m(ring, q=1, t=2)


@lru_cache(maxsize=None)
def _minus_qt_poch(k: int) -> LaurentPoly:
    """(-qt; qt^2)_k."""
    return q_pochhammer(_m(R4, -1, q=1, t=1), _b(), k)


@lru_cache(maxsize=None)
def _minus_t_poch(k: int) -> LaurentPoly:
    """(-t; qt^2)_k."""
    return q_pochhammer(_m(R4, -1, t=1), _b(), k)


@lru_cache(maxsize=None)
def hp_pochhammer(o: int, m: int) -> LaurentPoly:
    """HP(q;o)_m, the a-level categorification of (q;q)_m with shift o."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    b = _b()
    out = R4.zero()
    for i in range(m + 1):
        term = q_binomial(m, i, b) * _minus_qt_poch(m - i) * _minus_t_poch(i)
        # a^i q^-i Q^-i (qt^2)^{(m+o) i}
        e = (m + o) * i
        out = out + term.shift((2 * i, 2 * (e - i), 4 * e, -2 * i))
    return out


@lru_cache(maxsize=None)
def _pos_poch(n: int) -> LaurentPoly:
    """(-a^-1 q t^-1 Q; (qt^2)^-1)_n."""
    return q_pochhammer(_m(R4, -1, a=-1, q=1, t=-1, Q=1), _m(R4, q=-1, t=-2), n)


@lru_cache(maxsize=None)
def _neg_poch(r: int, n: int) -> LaurentPoly:
    """(-a^-1 q^-r t^(-2r-1) Q^-1; (qt^2)^-1)_n."""
    return q_pochhammer(_m(R4, -1, a=-1, q=-r, t=-2 * r - 1, Q=-1), _m(R4, q=-1, t=-2), n)


def superpoly_term(r: int, dv) -> LaurentPoly:
    d1, d2, d3, d4, d5 = dv
    b = _b()
    mult = q_multinomial((d1, d2, d3, d4, d4, d5, d5), b)
    dcd = sum(C942[i][j] * dv[i] * dv[j] for i in range(5) for j in range(5))
    lin = 2 * d1 + 4 * d2 + 4 * d4 + 5 * d5
    half = dcd - lin
    if half % 2:
        raise ArithmeticError("non-integral quadratic exponent")
    be = half // 2
    ae = d1 + d2 + d4 + d5
    qQ = -d1 + d2 + d5
    # a^ae (qQ)^qQ t^lin (qt^2)^be
    shift = (2 * ae, 2 * (qQ + be), 2 * (lin + 2 * be), 2 * qQ)
    body = (
        mult
        * _pos_poch(d1 + d2 + 2 * d4 + d5)
        * _neg_poch(r, d1 + d2 + 2 * d4 + 2 * d5)
        * _minus_qt_poch(d4)
        * hp_pochhammer(d1 + d2 + 2 * d4, d5)
    )
    return body.shift(shift)


@lru_cache(maxsize=None)
def superpoly_942(r: int) -> LaurentPoly:
    """Quadruply graded S^r-colored superpolynomial of 9_42 in (a, q, t, Q)."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    acc: Dict = {}
    for L in range(r // 2 + 1):
        K = r - 2 * L
        for d1 in range(K + 1):
            for d2 in range(K - d1 + 1):
                d3 = K - d1 - d2
                for d4 in range(L + 1):
                    d5 = L - d4
                    for e, c in superpoly_term(r, (d1, d2, d3, d4, d5)).terms.items():
                        acc[e] = acc.get(e, 0) + c
    return LaurentPoly(R4, acc)


def decategorify(P: LaurentPoly) -> LaurentPoly:
    """t = -1 and Q = 1 (when present), landing in (a, q)."""
    from .quiver import AQ

    mapping = {"t": -1}
    if "Q" in P.ring.index:
        mapping["Q"] = 1
    return P.substitute(mapping).to_ring(AQ)


def all_ones(P: LaurentPoly):
    return P.evaluate({v: 1 for v in P.ring.names})


def dimension(r: int) -> int:
    """sum_{K+2L=r} C(r,K) C(2L,L)^2 9^K 32^L."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    return sum(comb(r, r - 2 * L) * comb(2 * L, L) ** 2 * 9 ** (r - 2 * L) * 32 ** L for L in range(r // 2 + 1))


# ---------------------------------------------------------------------------
# structural properties


def check_hp_categorification(o: int, m: int) -> Verdict:
    """HP(q;o)_m at t = -1, Q = 1 is (q;q)_m."""
    from .quiver import qq

    ok = decategorify(hp_pochhammer(o, m)) == qq(m)
    return Verdict(ok, None, "" if ok else f"HP(q;{o})_{m} does not decategorify to (q;q)_{m}")


def hp_lemma(o: int, m: int, which: int = 1) -> Verdict:
    """The two mod-D identities satisfied by HP(q;o)_m (``which`` = 1 or 2)."""
    P = hp_pochhammer(o, m)
    if which == 1:
        target = R4.one()
        for ell in range(1, m + 1):
            target = target * D(2 - ell - m - o).poly()
        return check_mod_divisibility(P, target, D(2 - m - o))
    target = _m(R4, q=m * (m + 1) // 2, t=m * m)
    for ell in range(1, m + 1):
        target = target * D(1 + ell - m - o).poly()
    return check_mod_divisibility(P, target, D(1 - m - o))


def check_positive_differentials(r: int, l: int) -> Verdict:
    """P_r - P_l(Q -> Q (qt^2)^(r-l)) = (1 + a^-1 q^(1-l) t^(-1-2l) Q) X_+ with X_+ >= 0."""
    if not 0 <= l < r:
        raise ValueError("need 0 <= l < r")
    shifted = superpoly_942(l).substitute({"Q": _m(R4, q=r - l, t=2 * (r - l), Q=1)})
    Dd = DifferentialDegree(f"pos(r={r},l={l})", _m(R4, a=-1, q=1 - l, t=-1 - 2 * l, Q=1))
    return check_mod_divisibility(superpoly_942(r), shifted, Dd)


def check_negative_differentials(r: int, l: int) -> Verdict:
    """P_r - P_l = (1 + a^-1 q^(-r-l) t^(-1-2r-2l) Q^-1) X_- with X_- >= 0."""
    if not 0 <= l < r:
        raise ValueError("need 0 <= l < r")
    Dd = DifferentialDegree(f"neg(r={r},l={l})", _m(R4, a=-1, q=-r - l, t=-1 - 2 * r - 2 * l, Q=-1))
    return check_mod_divisibility(superpoly_942(r), superpoly_942(l), Dd)


# ---------------------------------------------------------------------------
# S^2 superpolynomials


def _s2(*names):
    out = RS2.one()
    for n in names:
        out = out * d(n).poly()
    return out


def s2_version1() -> LaurentPoly:
    """First S^2 superpolynomial of 9_42 in (a, q, t)."""
    m = lambda c=1, **e: _m(RS2, c, **e)  # noqa: E731
    return (
        1
        + m(a=1) * (m(q=-1, t=2) + m(q=1, t=4)) * (1 + m(q=1, t=2)) * _s2(1, -2)
        + m(a=2) * (m(t=8) + m(q=2, t=10) + m(q=3, t=12) + m(q=6, t=16)) * _s2(1, 0, -2, -3)
        + (1 + m(q=1, t=1)) * (1 + m(q=1, t=2)) * (m(a=1, t=4) * _s2(1, 0, -2, -3) + m(a=1, q=1, t=5) * _s2(1, -2, -3))
        + (1 + m(t=1)) * (1 + m(q=1, t=2)) * m(a=2, q=1, t=7) * _s2(1, -2, -3)
    )


def s2_version2() -> LaurentPoly:
    """Alternative S^2 superpolynomial of 9_42 in (a, q, t)."""
    m = lambda c=1, **e: _m(RS2, c, **e)  # noqa: E731
    return (
        1
        + m(a=1) * (m(q=-1, t=2) + m(q=1, t=4)) * (1 + m(q=2, t=1)) * _s2(1, -2)
        + m(a=2) * (m(t=8) + m(q=2, t=10) + m(q=3, t=12) + m(q=6, t=16)) * _s2(1, 0, -2, -3)
        + (1 + m(q=2, t=3)) * (m(a=1, t=4) * _s2(1, 0, -2, -3) + m(a=1, q=1, t=5) * _s2(1, -2, -3))
        + (1 + m(t=1)) * m(a=2, q=1, t=7) * _s2(1, -2, -3)
        + (1 + m(t=1)) * (m(a=3, q=-1, t=8) + m(a=3, q=5, t=16) + m(a=4, q=3, t=17)) * _s2(1, 0, -2, -3)
    )


def s2_version2_corrected() -> LaurentPoly:
    """Alternative S^2 superpolynomial with the first factor read as (1 + q t^2).

    This is the t_r = 1 specialization of the quadruply graded form; the
    factor (1 + q^2 t) as given does not decategorify to the colored polynomial.
    """
    m = lambda c=1, **e: _m(RS2, c, **e)  # noqa: E731
    fixed = 1 + m(q=1, t=2) - (1 + m(q=2, t=1))
    return s2_version2() + m(a=1) * (m(q=-1, t=2) + m(q=1, t=4)) * fixed * _s2(1, -2)


def s2_superpolys():
    return s2_version1(), s2_version2()


def check_s2_decategorification() -> Dict[str, Verdict]:
    """Each S^2 form at t = -1 (t_r = 1, t_c = -1) against the colored polynomial."""
    from .ansatz import colored_polynomial

    target = colored_polynomial("9_42", 2).poly
    forms = {
        "version1": decategorify(s2_version1()),
        "version2": decategorify(s2_version2()),
        "version2_corrected": decategorify(s2_version2_corrected()),
        "quadruply_graded": s2_quadruply_graded().substitute({"t_r": 1, "t_c": -1}).to_ring(target.ring),
    }
    out = {}
    for name, P in forms.items():
        ok = P == target
        out[name] = Verdict(ok, None, "" if ok else "does not decategorify to P_2")
    return out


def _D4(*names):
    out = RTT.one()
    for n in names:
        out = out * D_quad(n).poly()
    return out


def s2_quadruply_graded() -> LaurentPoly:
    """Quadruply graded alternative S^2 superpolynomial in (a, q, t_r, t_c)."""
    m = lambda c=1, **e: _m(RTT, c, **e)  # noqa: E731
    return (
        1
        + m(a=1) * (m(q=-1, t_r=2, t_c=2) + m(t_r=2, t_c=4) + m(q=1, t_r=4, t_c=4) + m(q=2, t_r=4, t_c=6)) * _D4(1, -2)
        + m(a=2) * (m(t_r=4, t_c=8) + m(q=2, t_r=6, t_c=10) + m(q=3, t_r=6, t_c=12) + m(q=6, t_r=8, t_c=16)) * _D4(1, 0, -2, -3)
        + (1 + m(q=2, t_r=-1, t_c=3)) * (m(a=1, t_r=4, t_c=4) * _D4(1, 0, -2, -3) + m(a=1, q=1, t_r=5, t_c=5) * _D4(1, -2, -3))
        + (1 + m(t_r=1, t_c=1)) * m(a=2, q=1, t_r=5, t_c=7) * _D4(1, -2, -3)
        + (1 + m(t_r=1, t_c=1))
        * (m(a=3, q=-1, t_r=6, t_c=8) + m(a=3, q=5, t_r=10, t_c=16) + m(a=4, q=3, t_r=11, t_c=17))
        * _D4(1, 0, -2, -3)
    )


def s2_self_symmetric_form() -> LaurentPoly:
    """P(a, q, t_r q^-1/2, t_c q^1/2) with q playing the role of Q."""
    P = s2_quadruply_graded()
    return P.substitute({"t_r": _m(RTT, t_r=1, q=Fraction(-1, 2)), "t_c": _m(RTT, t_c=1, q=Fraction(1, 2))})


def check_s2_self_symmetry() -> Verdict:
    S = s2_self_symmetric_form()
    T = S.substitute({"q": _m(RTT, q=-1), "t_r": _m(RTT, t_r=1, q=-1), "t_c": _m(RTT, t_c=1, q=-2)})
    if S == T:
        return Verdict(True, None)
    return Verdict(False, None, f"self-symmetry fails: {len(S - T)} terms differ")


def check_substitution_symmetry(P: LaurentPoly, mapping) -> bool:
    """Generic invariance test P == P(mapping); used for exploratory checks."""
    return P.substitute(mapping) == P


def general_self_symmetry_candidate(r: int) -> bool:
    """Reported only: one candidate reading of the general-r self-symmetry.

    Reads the (a, q, t, Q) superpolynomial as P''(a, Q=q, t_r=Q, t_c=t) and
    tests invariance under Q -> Q^-1 t_r^-2 t_c^-2r.  The grading change
    needed for the general statement is not fixed by the formulas above,
    so a False here is not a failure of any implemented identity.
    """
    P = superpoly_942(r)
    mapping = {"q": _m(R4, q=-1, Q=-2, t=-2 * r)}
    return check_substitution_symmetry(P, mapping)
