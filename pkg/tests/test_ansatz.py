from fractions import Fraction

import pytest
from knotquivers import ansatz, knotdb
from knotquivers.ansatz import Q_RING, colored_jones, eval_special_form
from knotquivers.laurent import q_pochhammer
from knotquivers.quiver import AQ, qq

a, q = AQ.gen("a"), AQ.gen("q")
Q = Q_RING.gen("q")


def test_trefoil_fundamental():
    assert eval_special_form(knotdb.get_knot("3_1"), 1).poly == a * q ** -1 + a * q - a ** 2


def test_figure_eight_fundamental():
    assert eval_special_form(knotdb.get_knot("4_1"), 1).poly == a ** -1 - q ** -1 + 1 - q + a


@pytest.mark.parametrize("name", knotdb.knot_names())
def test_zero_color_is_one(name):
    assert eval_special_form(knotdb.get_knot(name), 0).poly == AQ.one()


@pytest.mark.parametrize("name", knotdb.knot_names())
def test_sl1_and_integrality(name):
    data = knotdb.get_knot(name)
    top = 2 if max(data.n) >= 3 or data.k >= 7 else 3
    for r in range(1, top + 1):
        p = eval_special_form(data, r)
        assert ansatz.sl1_check(p)
        assert p.poly.is_integral() and p.poly.has_integer_coeffs()


def test_negative_color_rejected():
    with pytest.raises(ValueError):
        eval_special_form(knotdb.get_knot("3_1"), -1)


# ---------------------------------------------------------------------------
# colored Jones against closed formulas


def _torus_jones(n):
    # t^{(n-1)/2} (1 - t^3 - t^{n+1} + t^{n+2}) / (1 - t^2)
    num = 1 - Q ** 3 - Q ** (n + 1) + Q ** (n + 2)
    return num.exact_divide(1 - Q ** 2) * Q ** ((n - 1) // 2)


@pytest.mark.parametrize("p", range(1, 6))
def test_torus_family_jones(p):
    data = knotdb.torus_2_strand(p)
    assert colored_jones(eval_special_form(data, 1)).to_ring(Q_RING) == _torus_jones(2 * p + 1)


def _trefoil_cyclotomic(N):
    t = Q ** -1
    out = Q_RING.zero()
    for n in range(N):
        out = out + t ** (-n * N) * q_pochhammer(t ** (1 - N), t, n)
    return out * t ** (1 - N)


@pytest.mark.parametrize("r", range(1, 5))
def test_trefoil_colored_jones(r):
    cj = colored_jones(eval_special_form(knotdb.get_knot("3_1"), r)).to_ring(Q_RING)
    assert cj == _trefoil_cyclotomic(r + 1)


def _brace(m):
    return Q_RING.monomial(1, q=Fraction(m, 2)) - Q_RING.monomial(1, q=Fraction(-m, 2))


def _figure_eight_cyclotomic(N):
    out = Q_RING.zero()
    for n in range(N):
        term = Q_RING.one()
        for k in range(1, n + 1):
            term = term * _brace(N + k) * _brace(N - k)
        out = out + term
    return out


@pytest.mark.parametrize("r", range(1, 5))
def test_figure_eight_colored_jones(r):
    cj = colored_jones(eval_special_form(knotdb.get_knot("4_1"), r)).to_ring(Q_RING)
    assert cj == _figure_eight_cyclotomic(r + 1)


@pytest.mark.parametrize("name", ["4_1", "6_3_optA", "6_3_optB"])
def test_amphichiral_symmetry(name):
    inv = {"a": AQ.monomial(a=-1), "q": AQ.monomial(q=-1)}
    for r in range(1, 4):
        p = eval_special_form(knotdb.get_knot(name), r).poly
        assert p.substitute(inv) == p


def _habiro_term(N, k):
    out = Q_RING.one()
    for j in range(1, k + 1):
        out = out * _brace(N + j) * _brace(N - j)
    return out


def _habiro_coefficients(data, top):
    """Coefficients c_k in J_N = 1 + sum_k c_k prod_j {N+j}{N-j}; None on failure."""
    found = []
    for N in range(2, top + 2):
        rest = colored_jones(eval_special_form(data, N - 1)).to_ring(Q_RING) - 1
        for k, c in enumerate(found, start=1):
            rest = rest - c * _habiro_term(N, k)
        c = rest.exact_divide(_habiro_term(N, N - 1))
        if c is None:
            return None
        found.append(c)
    return found


@pytest.mark.parametrize("name", [n for n in knotdb.knot_names() if n != "6_3_optA"])
def test_cyclotomic_integrality(name):
    data = knotdb.get_knot(name)
    top = 2 if max(data.n) >= 3 or data.k >= 7 else 3
    assert _habiro_coefficients(data, top) is not None


def test_6_3_options():
    listed = knotdb.get_knot("6_3_optA")
    fixed = knotdb.corrected_knot("6_3_optA")
    other = knotdb.get_knot("6_3_optB")
    assert eval_special_form(listed, 1).poly == eval_special_form(other, 1).poly
    assert eval_special_form(listed, 2).poly != eval_special_form(other, 2).poly
    assert _habiro_coefficients(listed, 2) is None
    for r in range(1, 5):
        assert eval_special_form(fixed, r).poly == eval_special_form(other, r).poly
    assert _habiro_coefficients(fixed, 3) is not None


# ---------------------------------------------------------------------------
# 9_42


@pytest.mark.parametrize("r", range(0, 6))
def test_942_dual_forms(r):
    assert eval_special_form(knotdb.get_knot("9_42"), r).poly == ansatz.eval_942_multinomial_form(r).poly


def test_942_bottom_row_small():
    data = knotdb.get_knot("9_42")
    assert ansatz.bottom_row(eval_special_form(data, 1)) == (-1, Q ** -1 + Q)
    assert ansatz.bottom_row(eval_special_form(data, 2)) == (-3, Q ** -4 - Q ** -2)


@pytest.mark.parametrize("r", range(1, 8))
def test_942_reduced_bottom_rows(r):
    a_min, row = ansatz.bottom_row(eval_special_form(knotdb.get_knot("9_42"), r))
    assert (a_min, row) == ansatz.bottom_row_942_reduced(r)
    assert a_min == [-1, -3, -4, -6, -7, -9, -10][r - 1]


@pytest.mark.parametrize("r", range(1, 7))
def test_942_unreduced_bottom_rows(r):
    u = ansatz.unreduced(eval_special_form(knotdb.get_knot("9_42"), r))
    a_min, num = ansatz.bottom_row(u)
    ca, cnum, cden = ansatz.bottom_row_942_unreduced(r)
    assert a_min == ca
    assert num * cden == cnum * qq(r).to_ring(Q_RING)


def test_unreduced_is_a_pair():
    p = eval_special_form(knotdb.get_knot("3_1"), 2)
    u = ansatz.unreduced(p)
    assert not u.reduced and u.denominator == 2
    assert u.poly == p.poly * ansatz.unknot_numerator(2)
    # the unknot quotient (a;q)_r / (q;q)_r is not a Laurent polynomial
    assert ansatz.unknot_numerator(1).exact_divide(qq(1)) is None
    with pytest.raises(ValueError):
        ansatz.unreduced(u)


def test_unknot_numerator():
    assert ansatz.unknot_numerator(1) == (1 - a) * AQ.monomial(a=Fraction(-1, 2), q=Fraction(1, 2))


def test_json_payload():
    p = eval_special_form(knotdb.get_knot("3_1"), 1)
    d = p.to_json()
    assert d["reduced"] and d["denominator"] == "(q;q)_0"
