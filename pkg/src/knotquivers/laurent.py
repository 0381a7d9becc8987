"""Sparse multivariate Laurent polynomials with exact rational coefficients.

Exponents are stored in half-units: a stored exponent ``e2`` stands for the
true exponent ``e2 / 2``.  This keeps factors such as ``q^(1/2)`` and
``a^(-r/2)`` exactly representable while all arithmetic stays in integers.

The q-calculus helpers at the bottom (Pochhammer symbols, Gaussian binomials,
division by ``1 + monomial``) are the building blocks for every other module.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

Exp2 = Tuple[int, ...]
Coeff = Union[int, Fraction]


class RingError(ValueError):
    """Raised when polynomials from different variable sets are combined."""


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def half_units(e) -> int:
    """Convert a true exponent (int or half-integer Fraction) to half-units."""
    e2 = Fraction(e) * 2
    if e2.denominator != 1:
        raise ValueError(f"exponent {e} is not a multiple of 1/2")
    return int(e2)


def from_half_units(e2: int):
    return e2 // 2 if e2 % 2 == 0 else Fraction(e2, 2)


class PolyRing:
    """An ordered, fixed set of variable names."""

    __slots__ = ("names", "index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise RingError(f"duplicate variable names in {names}")
        self.names = names
        self.index = {n: i for i, n in enumerate(names)}

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)})"

    @property
    def nvars(self) -> int:
        return len(self.names)

    def zero(self) -> "LaurentPoly":
        return LaurentPoly(self, {})

    def one(self) -> "LaurentPoly":
        return self.const(1)

    def const(self, c) -> "LaurentPoly":
        return LaurentPoly(self, {(0,) * self.nvars: c})

    def gen(self, name: str) -> "LaurentPoly":
        return self.monomial(**{name: 1})

    def monomial(self, coeff=1, **exps) -> "LaurentPoly":
        """``ring.monomial(-1, a=-1, q=Fraction(1, 2))`` is ``-a^-1 q^(1/2)``."""
        e2 = [0] * self.nvars
        for name, e in exps.items():
            if name not in self.index:
                raise RingError(f"{name!r} is not a variable of {self}")
            e2[self.index[name]] = half_units(e)
        return LaurentPoly(self, {tuple(e2): coeff})

    def from_exp2(self, e2: Sequence[int], coeff=1) -> "LaurentPoly":
        return LaurentPoly(self, {tuple(e2): coeff})


class LaurentPoly:
    """Immutable sparse Laurent polynomial over a :class:`PolyRing`."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Exp2, Coeff], _clean=True):
        self.ring = ring
        if _clean:
            n = ring.nvars
            t = {}
            for e, c in terms.items():
                if len(e) != n:
                    raise RingError(f"exponent {e} does not match {ring}")
                if c:
                    t[tuple(e)] = _norm(c)
            terms = t
        self._terms = terms
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        # terms already canonical: no zero coefficients, normalized
        return cls(ring, terms, _clean=False)

    # ---- basic access -------------------------------------------------

    @property
    def terms(self) -> Dict[Exp2, Coeff]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exp2, Coeff]]:
        """Terms in canonical order (lexicographic on stored exponents)."""
        for e in sorted(self._terms):
            yield e, self._terms[e]

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def monomial_data(self) -> Tuple[Exp2, Coeff]:
        if len(self._terms) != 1:
            raise ValueError("not a monomial")
        (e, c), = self._terms.items()
        return e, c

    def coeff_of(self, **exps) -> Coeff:
        e2 = [0] * self.ring.nvars
        for name, e in exps.items():
            e2[self.ring.index[name]] = half_units(e)
        return self._terms.get(tuple(e2), 0)

    def constant_term(self) -> Coeff:
        return self._terms.get((0,) * self.ring.nvars, 0)

    # ---- arithmetic -----------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.ring != self.ring:
                raise RingError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)) or isinstance(other, Rational):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self._terms)
        for e, c in other._terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = _norm(v)
            else:
                t.pop(e, None)
        return LaurentPoly._raw(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.ring.zero()
            return LaurentPoly._raw(self.ring, {e: _norm(c * other) for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: Dict[Exp2, Coeff] = {}
        get = out.get
        if len(b) == 1:
            (eb, cb), = b.items()
            return LaurentPoly._raw(
                self.ring,
                {tuple(x + y for x, y in zip(ea, eb)): _norm(ca * cb) for ea, ca in a.items()},
            )
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        return LaurentPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("integer powers only")
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative powers are defined for monomials only")
            e, c = self.monomial_data()
            inv = c if c in (1, -1) else Fraction(1) / c
            return LaurentPoly._raw(self.ring, {tuple(x * n for x in e): _norm(inv ** -n)})
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == self.ring.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def scale_exponents(self, factor: int) -> "LaurentPoly":
        """Replace every variable v by v^factor (Adams operation)."""
        return LaurentPoly._raw(self.ring, {tuple(x * factor for x in e): c for e, c in self._terms.items()})

    def shift(self, e2: Sequence[int], coeff=1) -> "LaurentPoly":
        """Multiply by the monomial with stored exponent ``e2``."""
        if not coeff:
            return self.ring.zero()
        return LaurentPoly._raw(
            self.ring,
            {tuple(x + y for x, y in zip(e, e2)): _norm(c * coeff) for e, c in self._terms.items()},
        )

    # ---- predicates -----------------------------------------------------

    def has_nonneg_coeffs(self) -> bool:
        return all(c >= 0 for c in self._terms.values())

    def has_integer_coeffs(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    def is_integral(self, var: Optional[str] = None) -> bool:
        """True when all (or the named variable's) true exponents are integers."""
        if var is None:
            return all(x % 2 == 0 for e in self._terms for x in e)
        i = self.ring.index[var]
        return all(e[i] % 2 == 0 for e in self._terms)

    # ---- degree structure ----------------------------------------------

    def degree_range2(self, var: str) -> Tuple[int, int]:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        i = self.ring.index[var]
        vals = [e[i] for e in self._terms]
        return min(vals), max(vals)

    def min_degree(self, var: str):
        return from_half_units(self.degree_range2(var)[0])

    def max_degree(self, var: str):
        return from_half_units(self.degree_range2(var)[1])

    def coefficient(self, var: str, exponent) -> "LaurentPoly":
        """Coefficient of ``var^exponent``; the result no longer involves ``var``."""
        i = self.ring.index[var]
        e2 = half_units(exponent)
        out = {}
        for e, c in self._terms.items():
            if e[i] == e2:
                out[e[:i] + (0,) + e[i + 1:]] = c
        return LaurentPoly._raw(self.ring, out)

    def graded_parts(self, var: str) -> Dict[int, "LaurentPoly"]:
        """Split by the stored (half-unit) exponent of ``var``."""
        i = self.ring.index[var]
        parts: Dict[int, Dict[Exp2, Coeff]] = {}
        for e, c in self._terms.items():
            parts.setdefault(e[i], {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: LaurentPoly._raw(self.ring, v) for k, v in parts.items()}

    def truncate(self, var: str, max_exp) -> "LaurentPoly":
        """Drop terms whose exponent in ``var`` exceeds ``max_exp``."""
        i = self.ring.index[var]
        m2 = half_units(max_exp)
        return LaurentPoly._raw(self.ring, {e: c for e, c in self._terms.items() if e[i] <= m2})

    # ---- change of ring / substitution ----------------------------------

    def to_ring(self, ring: PolyRing) -> "LaurentPoly":
        """Re-express in ``ring``; variables absent from ``ring`` must not occur."""
        idx = []
        for name in ring.names:
            idx.append(self.ring.index.get(name))
        for name, i in self.ring.index.items():
            if name not in ring.index and any(e[i] for e in self._terms):
                raise RingError(f"variable {name!r} occurs but is missing from {ring}")
        out = {}
        for e, c in self._terms.items():
            out[tuple(e[i] if i is not None else 0 for i in idx)] = c
        return LaurentPoly._raw(ring, out)

    def substitute(
        self,
        mapping: Mapping[str, Union["LaurentPoly", int, Fraction]],
        target: Optional[PolyRing] = None,
        truncation: Optional[Mapping[str, object]] = None,
    ) -> "LaurentPoly":
        """Substitute polynomials for variables.

        Unmapped variables are carried over unchanged (they must exist in
        ``target``).  A variable occurring with a negative or half-integer
        exponent may only be replaced by a monomial.  With ``truncation``
        (var -> max true exponent) terms above the cutoff are dropped after
        every multiplication, which is sound when all factors have
        nonnegative exponents in the truncated variables.
        """
        target = target or self.ring
        for name in mapping:
            if name not in self.ring.index:
                raise RingError(f"cannot substitute {name!r}: not a variable of {self.ring}")
        cut = {}
        if truncation:
            cut = {target.index[v]: half_units(m) for v, m in truncation.items()}

        def trunc(p: LaurentPoly) -> LaurentPoly:
            if not cut:
                return p
            return LaurentPoly._raw(
                target, {e: c for e, c in p._terms.items() if all(e[i] <= m for i, m in cut.items())}
            )

        images = []
        for i, name in enumerate(self.ring.names):
            if name in mapping:
                img = mapping[name]
                if not isinstance(img, LaurentPoly):
                    img = target.const(img)
                elif img.ring != target:
                    img = img.to_ring(target)
                images.append(img)
            else:
                images.append(target.gen(name))

        power_cache: Dict[Tuple[int, int], LaurentPoly] = {}

        def power(i: int, e2: int) -> LaurentPoly:
            key = (i, e2)
            if key in power_cache:
                return power_cache[key]
            img = images[i]
            if img.is_monomial():
                me, mc = img.monomial_data()
                new = []
                for x in me:
                    num = x * e2
                    if num % 2:
                        raise ValueError("substitution produces an exponent finer than 1/2")
                    new.append(num // 2)
                if e2 % 2 == 0:
                    k = e2 // 2
                    c = mc ** k if k >= 0 else Fraction(1) / (mc ** -k)
                else:
                    if mc != 1:
                        raise ValueError("half-integer power of a monomial with coefficient != 1")
                    c = 1
                val = LaurentPoly(target, {tuple(new): c})
            else:
                if e2 < 0 or e2 % 2:
                    raise ValueError("non-monomial image raised to a negative or fractional power")
                val = trunc(img ** (e2 // 2))
            power_cache[key] = val
            return val

        acc: Dict[Exp2, Coeff] = {}
        for e, c in self._terms.items():
            term = target.const(c)
            for i, x in enumerate(e):
                if x:
                    term = trunc(term * power(i, x))
            for te, tc in term._terms.items():
                acc[te] = acc.get(te, 0) + tc
        result = LaurentPoly(target, acc)
        return trunc(result)

    def evaluate(self, values: Mapping[str, object]):
        """Numeric evaluation; every variable must be given a value."""
        total = 0
        vals = []
        for name in self.ring.names:
            v = values[name]
            vals.append(v)
        for e, c in self._terms.items():
            term = Fraction(c)
            for v, x in zip(vals, e):
                if x:
                    if x % 2:
                        if v != 1:
                            raise ValueError("half-integer exponent evaluated away from 1")
                        continue
                    term *= Fraction(v) ** (x // 2)
            total += term
        return _norm(Fraction(total))

    # ---- division --------------------------------------------------------

    def exact_divide(self, divisor: "LaurentPoly") -> Optional["LaurentPoly"]:
        """Return ``Y`` with ``self == divisor * Y`` or None if no such Laurent polynomial exists."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return self.ring.zero()
        if divisor.is_monomial():
            e, c = divisor.monomial_data()
            inv = Fraction(1) / c if c not in (1, -1) else c
            return self.shift(tuple(-x for x in e), inv)
        n = self.ring.nvars
        # quotient exponents are confined to a box (degrees add in each variable)
        lo, hi = [], []
        for i in range(n):
            pv = [e[i] for e in self._terms]
            dv = [e[i] for e in divisor._terms]
            lo.append(min(pv) - min(dv))
            hi.append(max(pv) - max(dv))
            if lo[-1] > hi[-1]:
                return None
        rem = dict(self._terms)
        d_lead = max(divisor._terms)
        d_lc = divisor._terms[d_lead]
        d_items = list(divisor._terms.items())
        quot: Dict[Exp2, Coeff] = {}
        while rem:
            lead = max(rem)
            t_e = tuple(x - y for x, y in zip(lead, d_lead))
            if any(t < l or t > h for t, l, h in zip(t_e, lo, hi)):
                return None
            t_c = _norm(Fraction(rem[lead]) / d_lc)
            quot[t_e] = t_c
            for de, dc in d_items:
                e = tuple(x + y for x, y in zip(de, t_e))
                v = rem.get(e, 0) - dc * t_c
                if v:
                    rem[e] = _norm(v)
                else:
                    rem.pop(e, None)
        return LaurentPoly(self.ring, quot)

    # ---- presentation -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "vars": list(self.ring.names),
            "terms": [{"e2": list(e), "c": str(c)} for e, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "LaurentPoly":
        ring = PolyRing(data["vars"])
        terms = {}
        for t in data["terms"]:
            e2 = tuple(int(x) for x in t["e2"])
            if len(e2) != ring.nvars:
                raise RingError("exponent vector length does not match vars")
            terms[e2] = Fraction(t["c"])
        return cls(ring, terms)

    def pretty(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for e, c in self.items():
            factors = []
            for name, x in zip(self.ring.names, e):
                if x == 0:
                    continue
                if x == 2:
                    factors.append(name)
                elif x % 2 == 0:
                    factors.append(f"{name}^{x // 2}")
                else:
                    factors.append(f"{name}^({x}/2)")
            mono = "*".join(factors)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            out.append((sign, body))
        first_sign, first = out[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"LaurentPoly({self.pretty()})"

    __str__ = pretty


# ---------------------------------------------------------------------------
# q-calculus


def poly_arith(p: LaurentPoly, q: LaurentPoly, op: str) -> LaurentPoly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown op {op!r}")


def q_pochhammer(base: LaurentPoly, step: LaurentPoly, k: int) -> LaurentPoly:
    """(base; step)_k = prod_{i<k} (1 - base * step^i)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    result = base.ring.one()
    factor = base
    for i in range(k):
        result = result * (1 - factor)
        if i + 1 < k:
            factor = factor * step
    return result


@lru_cache(maxsize=None)
def gaussian_coeffs(n: int, k: int) -> Tuple[int, ...]:
    """Coefficient list of the Gaussian binomial [n, k]_z in powers of z."""
    if k < 0 or k > n:
        return ()
    if k == 0 or k == n:
        return (1,)
    # [n,k] = [n-1,k-1] + z^k [n-1,k]
    a = gaussian_coeffs(n - 1, k - 1)
    b = gaussian_coeffs(n - 1, k)
    size = k * (n - k) + 1
    out = [0] * size
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i + k] += c
    return tuple(out)


def _series_in_monomial(coeffs: Sequence[int], base: LaurentPoly) -> LaurentPoly:
    e, c = base.monomial_data()
    terms = {}
    ck = 1
    for j, a in enumerate(coeffs):
        if a:
            terms[tuple(x * j for x in e)] = a * ck
        ck *= c
    return LaurentPoly(base.ring, terms)


def q_binomial(n: int, k: int, base: LaurentPoly) -> LaurentPoly:
    """Gaussian binomial [n, k] in the monomial ``base``; zero when k > n."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    if k > n:
        return base.ring.zero()
    return _series_in_monomial(gaussian_coeffs(n, k), base)


@lru_cache(maxsize=None)
def multinomial_coeffs(parts: Tuple[int, ...]) -> Tuple[int, ...]:
    """Coefficients of (z;z)_{sum parts} / prod (z;z)_{part} in powers of z."""
    parts = tuple(sorted(p for p in parts if p))
    if len(parts) <= 1:
        return (1,)
    n = sum(parts)
    rest = multinomial_coeffs(parts[1:])
    head = gaussian_coeffs(n, parts[0])
    out = [0] * (len(rest) + len(head) - 1)
    for i, a in enumerate(head):
        if a:
            for j, b in enumerate(rest):
                out[i + j] += a * b
    return tuple(out)


def q_multinomial(parts: Sequence[int], base: LaurentPoly) -> LaurentPoly:
    """[sum(parts); parts] in the monomial ``base``."""
    if any(p < 0 for p in parts):
        raise ValueError("parts must be nonnegative")
    return _series_in_monomial(multinomial_coeffs(tuple(parts)), base)


def divide_by_one_plus_monomial(p: LaurentPoly, m: LaurentPoly) -> Optional[LaurentPoly]:
    """Return Y with p = (1 + m) * Y, or None.

    Terms of ``p`` are grouped into residue classes of exponents modulo the
    exponent vector of ``m``; each class is a Laurent polynomial in one
    variable z = m and is divided by (1 + z) from its lowest power upwards.
    """
    v, mc = m.monomial_data()
    if not any(v):
        raise ValueError("m must be a non-unit monomial")
    pivot = next(i for i, x in enumerate(v) if x)
    classes: Dict[Exp2, Dict[int, Coeff]] = {}
    for e, c in p._terms.items():
        t = e[pivot] // v[pivot]
        key = tuple(x - t * y for x, y in zip(e, v))
        classes.setdefault(key, {})[t] = c
    quot: Dict[Exp2, Coeff] = {}
    for key, series in classes.items():
        lo, hi = min(series), max(series)
        prev = 0
        for t in range(lo, hi):
            y = series.get(t, 0) - mc * prev
            if y:
                quot[tuple(x + t * w for x, w in zip(key, v))] = y
            prev = y
        if hi == lo or series[hi] != mc * prev:
            return None
    return LaurentPoly(p.ring, quot)


def has_nonneg_coeffs(p: LaurentPoly) -> bool:
    return p.has_nonneg_coeffs()


def substitute(p: LaurentPoly, mapping, target=None, truncation=None) -> LaurentPoly:
    return p.substitute(mapping, target=target, truncation=truncation)
