from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from knotquivers.laurent import (
    LaurentPoly,
    PolyRing,
    RingError,
    divide_by_one_plus_monomial,
    from_half_units,
    gaussian_coeffs,
    half_units,
    multinomial_coeffs,
    q_binomial,
    q_multinomial,
    q_pochhammer,
)

R = PolyRing(["a", "q"])
Q1 = PolyRing(["q"])

exps = st.integers(-6, 6)
coeffs = st.integers(-5, 5)
polys = st.dictionaries(st.tuples(exps, exps), coeffs, max_size=6).map(lambda d: LaurentPoly(R, d))
int_polys = st.dictionaries(st.tuples(exps.map(lambda x: 2 * x), exps.map(lambda x: 2 * x)), coeffs, max_size=6).map(
    lambda d: LaurentPoly(R, d)
)


@settings(max_examples=1000, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == R.zero()
    assert x * R.one() == x
    assert x + R.zero() == x


@settings(max_examples=300, deadline=None)
@given(polys, polys)
def test_division_round_trip(x, y):
    if y.is_zero():
        return
    assert (x * y).exact_divide(y) == x


@settings(max_examples=300, deadline=None)
@given(int_polys, int_polys)
def test_product_matches_sympy(x, y):
    a, q = sympy.symbols("a q")

    def to_sympy(p):
        return sum((c * a ** (e[0] // 2) * q ** (e[1] // 2) for e, c in p.items()), sympy.Integer(0))

    assert sympy.expand(to_sympy(x * y) - to_sympy(x) * to_sympy(y)) == 0


@settings(max_examples=200, deadline=None)
@given(polys, st.integers(-3, 3), st.integers(-3, 3))
def test_divide_by_one_plus_monomial_round_trip(x, i, j):
    if i == 0 and j == 0:
        return
    m = R.monomial(1, a=i, q=j)
    assert divide_by_one_plus_monomial(x * (1 + m), m) == x


def test_divide_by_one_plus_monomial_rejects():
    q = Q1.gen("q")
    assert divide_by_one_plus_monomial(1 + q + q ** 2, q) is None
    assert divide_by_one_plus_monomial(Q1.zero(), q) == Q1.zero()


def test_half_units():
    assert half_units(Fraction(3, 2)) == 3
    assert half_units(-2) == -4
    assert from_half_units(3) == Fraction(3, 2)
    assert from_half_units(4) == 2
    with pytest.raises((ValueError, RingError)):
        half_units(Fraction(1, 3))


def test_half_integer_monomials_and_pretty():
    p = R.monomial(-1, a=-1, q=Fraction(1, 2))
    assert p.pretty() == "-a^-1*q^(1/2)"
    assert (p * p).pretty() == "a^-2*q"
    assert R.zero().pretty() == "0"


def test_json_round_trip():
    p = R.monomial(3, a=2, q=-1) - R.monomial(Fraction(1, 2), q=Fraction(5, 2))
    assert LaurentPoly.from_json(p.to_json()) == p


def test_substitute_and_evaluate():
    a, q = R.gen("a"), R.gen("q")
    p = a * q ** -1 + a * q - a ** 2
    assert p.substitute({"a": q ** 2}) == q + q ** 3 - q ** 4
    assert p.evaluate({"a": 1, "q": 1}) == 1
    # simultaneous substitution
    assert (a * q).substitute({"a": q, "q": a}) == a * q


def test_coefficient_and_degrees():
    a, q = R.gen("a"), R.gen("q")
    p = a ** -2 * (q + 3) + a * q ** 5
    assert p.min_degree("a") == -2
    assert p.max_degree("a") == 1
    assert p.coefficient("a", -2) == q + 3


# ---------------------------------------------------------------------------
# q-calculus


def test_gaussian_coeffs_small():
    assert gaussian_coeffs(4, 2) == (1, 1, 2, 1, 1)
    assert gaussian_coeffs(3, 0) == (1,)
    assert gaussian_coeffs(2, 3) == ()


@pytest.mark.parametrize("n", range(0, 8))
def test_q_binomial_matches_sympy(n):
    z = sympy.symbols("z")

    def qq(k):
        return sympy.prod([1 - z ** i for i in range(1, k + 1)])

    for k in range(n + 1):
        expected = sympy.Poly(sympy.cancel(qq(n) / (qq(k) * qq(n - k))), z).all_coeffs()[::-1]
        assert list(gaussian_coeffs(n, k)) == [int(c) for c in expected]


@pytest.mark.parametrize("n", range(1, 9))
def test_q_pascal(n):
    q = Q1.gen("q")
    for k in range(1, n):
        assert q_binomial(n, k, q) == q_binomial(n - 1, k - 1, q) + q ** k * q_binomial(n - 1, k, q)


@pytest.mark.parametrize("n", range(0, 7))
def test_q_binomial_theorem(n):
    # (z; q)_n = sum_k (-1)^k q^{k(k-1)/2} [n;k] z^k
    ring = PolyRing(["z", "q"])
    z, q = ring.gen("z"), ring.gen("q")
    rhs = ring.zero()
    for k in range(n + 1):
        rhs = rhs + q_binomial(n, k, q) * q ** (k * (k - 1) // 2) * z ** k * (-1) ** k
    assert q_pochhammer(z, q, n) == rhs


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 6), st.integers(0, 6), st.integers(-3, 3), st.integers(-3, 3))
def test_pochhammer_splitting(m, n, i, j):
    ring = PolyRing(["a", "q"])
    z = ring.monomial(1, a=i, q=j)
    s = ring.gen("q")
    assert q_pochhammer(z, s, m + n) == q_pochhammer(z, s, m) * q_pochhammer(z * s ** m, s, n)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=4))
def test_multinomial_is_product_of_binomials(parts):
    q = Q1.gen("q")
    expected = Q1.one()
    total = 0
    for p in parts:
        total += p
        expected = expected * q_binomial(total, p, q)
    assert q_multinomial(parts, q) == expected
    assert sum(multinomial_coeffs(tuple(parts))) == _classical_multinomial(parts)


def _classical_multinomial(parts):
    from math import factorial

    out = factorial(sum(parts))
    for p in parts:
        out //= factorial(p)
    return out


def test_pochhammer_rejects_negative_length():
    with pytest.raises(ValueError):
        q_pochhammer(Q1.gen("q"), Q1.gen("q"), -1)
