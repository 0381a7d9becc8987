"""Colored HOMFLY-PT polynomials from special-form data.

The reduced S^r-colored polynomial is a finite lattice sum over d >= 0 with
sum n_i d_i = r of

    (q;q)_r / prod (q;q)_{d_i} * (-1)^{sum C_ii d_i} a^{a.d} q^{q.d}
        * q^{(dCd - sum C_ii d_i)/2} * (a^-1 q; q^-1)_{r.d} * (a^-1 q^-r; q^-1)_{l.d}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

from .knotdb import SpecialFormData, get_knot
from .laurent import LaurentPoly, PolyRing, from_half_units, q_binomial, q_pochhammer
from .quiver import AQ, degree_lattice, level_multinomial, qq, quadratic_form

Q_RING = PolyRing(["q"])


class ConsistencyError(ArithmeticError):
    pass


@dataclass(frozen=True)
class ColoredPolynomial:
    """A colored polynomial; unreduced values are ``poly / (q;q)_r``.

    For reduced polynomials ``denominator`` is 0, i.e. no denominator.
    """

    knot: str
    r: int
    reduced: bool
    poly: LaurentPoly
    denominator: int = 0

    def denominator_poly(self) -> LaurentPoly:
        return qq(self.denominator)

    def to_json(self) -> dict:
        return {
            "knot": self.knot,
            "r": self.r,
            "reduced": self.reduced,
            "numerator": self.poly.to_json(),
            "denominator": f"(q;q)_{self.denominator}",
        }


def _mono(a2: int, q2: int, c=1) -> LaurentPoly:
    return LaurentPoly(AQ, {(a2, q2): c})


@lru_cache(maxsize=None)
def _poch_down(q_shift: int, length: int) -> LaurentPoly:
    """(a^-1 q^{q_shift}; q^-1)_length."""
    return q_pochhammer(_mono(-2, 2 * q_shift), _mono(0, -2), length)


@lru_cache(maxsize=None)
def _tail(r: int, pos: Tuple[Tuple[int, int], ...], neg_len: int) -> LaurentPoly:
    out = _poch_down(-r, neg_len)
    for shift, length in pos:
        out = out * _poch_down(shift, length)
    return out


def _dot(u, d) -> int:
    return sum(x * y for x, y in zip(u, d))


def special_form_term(data: SpecialFormData, r: int, d) -> LaurentPoly:
    """Single lattice term of the special form."""
    diag = [data.C[i][i] for i in range(data.k)]
    tr = _dot(diag, d)
    dcd = quadratic_form(data.C, d)
    if (dcd - tr) % 2:
        raise ConsistencyError("non-integral quadratic exponent")
    qe = _dot(data.q, d) + (dcd - tr) // 2
    ae = _dot(data.a, d)
    pos = tuple((1 - _dot(b.shift, d), _dot(b.coeff, d)) for b in data.positive_blocks())
    body = level_multinomial(r, tuple(d)) * _tail(r, pos, _dot(data.l, d))
    return body.shift((2 * ae, 2 * qe), -1 if tr % 2 else 1)


def eval_special_form(data: SpecialFormData, r: int) -> ColoredPolynomial:
    """Reduced S^r-colored polynomial of ``data`` (exact)."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    acc = {}
    for d in degree_lattice(data.n, r):
        for e, c in special_form_term(data, r, d).terms.items():
            acc[e] = acc.get(e, 0) + c
    return ColoredPolynomial(data.name, r, True, LaurentPoly(AQ, acc))


def colored_polynomial(name: str, r: int) -> ColoredPolynomial:
    return eval_special_form(get_knot(name), r)


def eval_942_multinomial_form(r: int) -> ColoredPolynomial:
    """Reduced colored polynomial of 9_42 from its multinomial rewriting."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    q = AQ.gen("q")
    acc = AQ.zero()
    for l in range(r // 2 + 1):
        k = r - 2 * l
        # (q;q)_r / ((q;q)_k (q;q)_l) = [r;k] (q^{l+1};q)_l
        pref = q_binomial(r, k, q) * q_pochhammer(_mono(0, 2 * (l + 1)), q, l)
        inner = AQ.zero()
        for j in range(k + 1):
            for i in range(j + 1):
                bij = q_binomial(k, j, q) * q_binomial(j, i, q)
                for alpha in range(l + 1):
                    qe2 = 2 * (i * i + j * j - 2 * j + i + 2 * l * (i + j)) + 4 * (l * l - l) + alpha * alpha + alpha
                    term = bij * q_binomial(l, alpha, q) * _poch_down(1, 2 * l + j - alpha) * _poch_down(-r, 2 * l + j)
                    inner = inner + term.shift((2 * (l + j), qe2), -1 if alpha % 2 else 1)
        acc = acc + pref * inner
    return ColoredPolynomial("9_42", r, True, acc)


def unknot_numerator(r: int) -> LaurentPoly:
    """a^{-r/2} q^{r/2} (a;q)_r; the unreduced unknot is this over (q;q)_r."""
    a = AQ.gen("a")
    return q_pochhammer(a, AQ.gen("q"), r).shift((-r, r))


def unreduced(p: ColoredPolynomial) -> ColoredPolynomial:
    """Unreduced polynomial as the exact pair (numerator, (q;q)_r).

    (a;q)_r / (q;q)_r is not a Laurent polynomial for r >= 1, so no
    division is attempted; the numerator is P_r * a^{-r/2} q^{r/2} (a;q)_r.
    """
    if not p.reduced:
        raise ValueError("polynomial is already unreduced")
    return ColoredPolynomial(p.knot, p.r, False, p.poly * unknot_numerator(p.r), denominator=p.r)


def bottom_row(p: ColoredPolynomial) -> Tuple[object, LaurentPoly]:
    """(a_min, coefficient of a^a_min as a polynomial in q).

    For an unreduced polynomial the coefficient returned is that of the
    numerator; the bottom row itself is that coefficient over (q;q)_r.
    """
    poly = p.poly
    if poly.is_zero():
        raise ValueError("zero polynomial has no bottom row")
    a_min = poly.min_degree("a")
    return a_min, poly.coefficient("a", a_min).to_ring(Q_RING)


def sl1_check(p: ColoredPolynomial) -> bool:
    """Reduced polynomials collapse to 1 under a -> q."""
    return p.poly.substitute({"a": AQ.gen("q")}) == AQ.one()


def colored_jones(p: ColoredPolynomial) -> LaurentPoly:
    """Specialization a = q^2."""
    return p.poly.substitute({"a": _mono(0, 4)})


# closed forms for the 9_42 bottom rows ---------------------------------------


def bottom_row_942_reduced(r: int) -> Tuple[int, LaurentPoly]:
    """Closed form of the reduced bottom row of 9_42 (r >= 1)."""
    q = Q_RING.gen("q")
    a_min = -r - r // 2
    if r % 2 == 0:
        l = r // 2
        poly = q_pochhammer(q ** (l + 1), q, l).shift((2 * (-6 * l * l + 2 * l),))
        return a_min, poly
    l = (r - 1) // 2
    num = (q ** (2 * l - 1) + q ** (4 * l + 1)) * q_pochhammer(q, q, 2 * l + 1)
    den = q_pochhammer(q, q, 1) * q_pochhammer(q, q, l)
    quo = num.exact_divide(den)
    if quo is None:
        raise ConsistencyError("closed form is not a polynomial")
    return a_min, quo.shift((2 * (-6 * l * l - 6 * l),))


def bottom_row_942_unreduced(r: int) -> Tuple[object, LaurentPoly, LaurentPoly]:
    """Closed form of the unreduced bottom row of 9_42 as (a_min, numerator, denominator)."""
    q = Q_RING.gen("q")
    a_min = from_half_units(2 * (-r - r // 2) - r)
    if r % 2 == 0:
        l = r // 2
        num = Q_RING.one().shift((2 * (-6 * l * l + 2 * l) + r,))
        return a_min, num, q_pochhammer(q, q, l)
    l = (r - 1) // 2
    num = (q ** (2 * l - 1) + q ** (4 * l + 1)).shift((2 * (-6 * l * l - 6 * l) + r,))
    return a_min, num, q_pochhammer(q, q, 1) * q_pochhammer(q, q, l)
