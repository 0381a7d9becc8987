"""LMOV/BPS numbers of colored polynomials and DT invariants of symmetric quivers.

Both extractions are done exactly.  Series whose x^m coefficient has the form
A_m / (q;q)_m are handled through their numerators, using

    (A_k / (q;q)_k) (B_{m-k} / (q;q)_{m-k}) = A_k B_{m-k} [m;k] / (q;q)_m,

so no truncation in q is ever needed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .ansatz import eval_special_form, unreduced
from .knotdb import SpecialFormData
from .laurent import LaurentPoly, PolyRing, q_binomial, q_multinomial, q_pochhammer
from .quiver import _inverse_qq_coeffs


class LMOVViolation(ArithmeticError):
    pass


class DTError(ArithmeticError):
    pass


def _divisors(m: int) -> List[int]:
    return [n for n in range(2, m + 1) if m % n == 0]


def _q(ring: PolyRing) -> LaurentPoly:
    return ring.gen("q")


@lru_cache(maxsize=None)
def _qq(ring: PolyRing, k: int, step: int = 1) -> LaurentPoly:
    """(q^step; q^step)_k."""
    qs = _q(ring) ** step
    return q_pochhammer(qs, qs, k)


def _adams_factor(ring: PolyRing, m: int, n: int) -> LaurentPoly:
    """(q;q)_m / (q^n;q^n)_{m/n}, a polynomial."""
    out = _qq(ring, m).exact_divide(_qq(ring, m // n, n))
    if out is None:
        raise ArithmeticError("Adams factor is not a polynomial")
    return out


# ---------------------------------------------------------------------------
# plain series in x


def _x_coeffs(series: LaurentPoly, max_r: int) -> List[LaurentPoly]:
    parts = series.graded_parts("x")
    if any(k < 0 or k % 2 for k in parts):
        raise ValueError("series must be a power series in x with integral exponents")
    zero = series.ring.zero()
    return [parts.get(2 * m, zero) for m in range(max_r + 1)]


def plethystic_log(series: LaurentPoly, max_r: int) -> Dict[int, LaurentPoly]:
    """f_1..f_max_r with series = exp(sum_{n,r} f_r(a^n, q^n) x^{rn} / n).

    ``series`` lives in a ring containing ``x``; the returned f_r no longer
    involve x.
    """
    P = _x_coeffs(series, max_r)
    if P[0] != series.ring.one():
        raise ValueError("series must have constant term 1")
    L = [series.ring.zero()] * (max_r + 1)
    for m in range(1, max_r + 1):
        acc = P[m] * m
        for k in range(1, m):
            acc = acc - L[k] * P[m - k] * k
        L[m] = acc * Fraction(1, m)
    f: Dict[int, LaurentPoly] = {}
    for m in range(1, max_r + 1):
        acc = L[m]
        for n in _divisors(m):
            acc = acc - f[m // n].scale_exponents(n) * Fraction(1, n)
        f[m] = acc
    return f


def plethystic_exp(f: Dict[int, LaurentPoly], max_r: int, ring: PolyRing) -> LaurentPoly:
    """exp(sum_{n, r} f_r(a^n, q^n) x^{rn} / n) truncated at x^max_r; ``ring`` must contain x."""
    L = [ring.zero()] * (max_r + 1)
    for r, fr in f.items():
        fr = fr.to_ring(ring)
        n = 1
        while r * n <= max_r:
            L[r * n] = L[r * n] + fr.scale_exponents(n) * Fraction(1, n)
            n += 1
    P = [ring.one()] + [ring.zero()] * max_r
    for m in range(1, max_r + 1):
        acc = ring.zero()
        for k in range(1, m + 1):
            acc = acc + L[k] * P[m - k] * k
        P[m] = acc * Fraction(1, m)
    x_index = ring.index["x"]
    out = ring.zero()
    for m, p in enumerate(P):
        e = [0] * ring.nvars
        e[x_index] = 2 * m
        out = out + p.shift(tuple(e))
    return out


# ---------------------------------------------------------------------------
# series with (q;q)_m denominators


def log_numerators(A: Sequence[LaurentPoly]) -> List[LaurentPoly]:
    """Numerators over (q;q)_m of the x^m coefficients of the logarithm."""
    ring = A[0].ring
    q = _q(ring)
    B = [ring.zero()] * len(A)
    for m in range(1, len(A)):
        acc = ring.zero()
        for k in range(1, m):
            acc = acc + B[k] * A[m - k] * q_binomial(m, k, q) * k
        B[m] = A[m] - acc * Fraction(1, m)
    return B


def exp_numerators(B: Sequence[LaurentPoly]) -> List[LaurentPoly]:
    """Inverse of :func:`log_numerators`."""
    ring = B[0].ring if B else None
    q = _q(ring)
    A = [ring.one()] + [ring.zero()] * (len(B) - 1)
    for m in range(1, len(B)):
        acc = ring.zero()
        for k in range(1, m + 1):
            acc = acc + B[k] * A[m - k] * q_binomial(m, k, q) * k
        A[m] = acc * Fraction(1, m)
    return A


def free_energy_numerators(A: Sequence[LaurentPoly]) -> Dict[int, LaurentPoly]:
    """F_m with f_m = F_m / (q;q)_m, from numerators A_m of the colored series."""
    ring = A[0].ring
    if A[0] != ring.one():
        raise ValueError("series must have constant term 1")
    B = log_numerators(A)
    F: Dict[int, LaurentPoly] = {}
    for m in range(1, len(A)):
        acc = B[m]
        for n in _divisors(m):
            acc = acc - F[m // n].scale_exponents(n) * _adams_factor(ring, m, n) * Fraction(1, n)
        F[m] = acc
    return F


def free_energy_to_series(F: Dict[int, LaurentPoly], max_r: int, ring: PolyRing) -> List[LaurentPoly]:
    """Numerators A_0..A_max_r rebuilt from free-energy numerators."""
    B = [ring.zero()] * (max_r + 1)
    for r, Fr in F.items():
        n = 1
        while r * n <= max_r:
            B[r * n] = B[r * n] + Fr.scale_exponents(n) * _adams_factor(ring, r * n, n) * Fraction(1, n)
            n += 1
    return exp_numerators(B)


@dataclass
class BPSTable:
    entries: Dict[Tuple[int, object, object], int]

    def slice(self, r: int) -> Dict[Tuple[object, object], int]:
        return {(i, j): v for (rr, i, j), v in self.entries.items() if rr == r}

    def to_json(self) -> dict:
        return {str(list(map(str, k))): v for k, v in sorted(self.entries.items(), key=lambda kv: (kv[0][0], Fraction(kv[0][1]), Fraction(kv[0][2])))}


def _read_bps(r: int, poly: LaurentPoly) -> Dict[Tuple[int, object, object], int]:
    if not poly.has_integer_coeffs():
        raise LMOVViolation(f"non-integer BPS number at r={r}")
    out = {}
    ai, qi = poly.ring.index["a"], poly.ring.index["q"]
    for e, c in poly.items():
        i, j = Fraction(e[ai], 2), Fraction(e[qi], 2)
        out[(r, i.numerator if i.denominator == 1 else i, j.numerator if j.denominator == 1 else j)] = int(c)
    return out


def bps_numbers(f_r: LaurentPoly, r: int) -> Dict[Tuple[int, object, object], int]:
    """N_{r,i,j} from a polynomial-valued f_r: the coefficients of (q - q^-1) f_r."""
    q = _q(f_r.ring)
    return _read_bps(r, f_r * (q - q ** -1))


def bps_from_numerator(F_m: LaurentPoly, m: int) -> Dict[Tuple[int, object, object], int]:
    """N_{m,i,j} from f_m = F_m / (q;q)_m; the division must be exact."""
    ring = F_m.ring
    q = _q(ring)
    num = F_m * (q - q ** -1)
    quo = num.exact_divide(_qq(ring, m))
    if quo is None:
        raise LMOVViolation(f"(q - q^-1) f_{m} is not a Laurent polynomial")
    return _read_bps(m, quo)


def knot_bps(data: SpecialFormData, max_r: int) -> BPSTable:
    """BPS numbers of the unreduced colored series of a knot up to x^max_r."""
    A = [unreduced(eval_special_form(data, r)).poly for r in range(max_r + 1)]
    F = free_energy_numerators(A)
    entries = {}
    for m in range(1, max_r + 1):
        entries.update(bps_from_numerator(F[m], m))
    return BPSTable(entries)


# ---------------------------------------------------------------------------
# DT invariants


DQ = PolyRing(["q"])


@dataclass
class DTTable:
    m: int
    max_deg: int
    entries: Dict[Tuple[Tuple[int, ...], int], int]

    def nonnegative(self) -> bool:
        return all(v >= 0 for v in self.entries.values())

    def to_json(self) -> dict:
        return {f"{list(d)};{j}": v for (d, j), v in sorted(self.entries.items())}


def _vectors(m: int, max_deg: int):
    for total in range(1, max_deg + 1):
        for d in _compositions(total, m):
            yield d


def _compositions(total: int, m: int):
    if m == 0:
        return
    if m == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, m - 1):
            yield (first,) + rest


def dt_invariants(C, max_deg: int, require_nonnegative: bool = True) -> DTTable:
    """Motivic DT invariants Omega_{d;j} for |d| <= max_deg.

    Convention: P_C = prod_d prod_j prod_k (1 - x^d q^{(j+1)/2 + k})^{(-1)^{j+1+|d|} Omega_{d;j}}.
    The extra (-1)^{|d|} is the sign twist under which the invariants are
    nonnegative; e.g. the single node without loops has Omega_{(1);-1} = 1.
    """
    m = len(C)
    q = DQ.gen("q")
    if m == 0:
        return DTTable(0, max_deg, {})
    zero = tuple([0] * m)
    vecs = list(_vectors(m, max_deg))
    A: Dict[Tuple[int, ...], LaurentPoly] = {zero: DQ.one()}
    for d in vecs:
        dcd = sum(C[i][j] * d[i] * d[j] for i in range(m) for j in range(m))
        A[d] = q_multinomial(d, q).shift((dcd,), -1 if dcd % 2 else 1)
    # multivariate log through the Euler operator
    B: Dict[Tuple[int, ...], LaurentPoly] = {}
    for d in vecs:
        n = sum(d)
        acc = DQ.zero()
        for dp in itertools.product(*(range(x + 1) for x in d)):
            k = sum(dp)
            if k == 0 or k == n:
                continue
            rest = tuple(x - y for x, y in zip(d, dp))
            acc = acc + B[dp] * A[rest] * q_binomial(n, k, q) * k
        B[d] = A[d] - acc * Fraction(1, n)
    H: Dict[Tuple[int, ...], LaurentPoly] = {}
    entries = {}
    for d in vecs:
        n = sum(d)
        acc = B[d]
        g = 0
        for x in d:
            g = gcd(g, x)
        for k in _divisors(g):
            sub = tuple(x // k for x in d)
            acc = acc - H[sub].scale_exponents(k) * _adams_factor(DQ, n, k) * Fraction(1, k)
        H[d] = acc
        omega = (acc * (1 - q)).exact_divide(_qq(DQ, n))
        if omega is None:
            raise DTError(f"DT generating function for d={d} is not a Laurent polynomial")
        for (e2,), c in omega.items():
            # c q^{e2/2} = -(-1)^{j+1+|d|} Omega q^{(j+1)/2} with j + 1 = e2
            if not isinstance(c, int):
                raise DTError(f"non-integer DT invariant at d={d}")
            val = c if (e2 + n) % 2 else -c
            entries[(d, e2 - 1)] = val
            if require_nonnegative and val < 0:
                raise DTError(f"negative DT invariant {val} at d={d}, j={e2 - 1}")
    return DTTable(m, max_deg, entries)


def _xring(m: int) -> PolyRing:
    return PolyRing([f"x{i + 1}" for i in range(m)] + ["q"])


def _truncate(p: LaurentPoly, m: int, max_deg: int, max_q) -> LaurentPoly:
    out = {}
    for e, c in p.terms.items():
        if sum(e[:m]) <= 2 * max_deg and e[m] <= 2 * max_q:
            out[e] = c
    return LaurentPoly(p.ring, out)


def multivariate_quiver_series(C, max_deg: int, max_q) -> LaurentPoly:
    """sum_d (-q^{1/2})^{dCd} x^d / prod (q;q)_{d_i}, truncated in |d| and q."""
    m = len(C)
    ring = _xring(m)
    acc = {}
    for total in range(max_deg + 1):
        for d in (_compositions(total, m) if total else [tuple([0] * m)]):
            dcd = sum(C[i][j] * d[i] * d[j] for i in range(m) for j in range(m))
            terms = [(dcd, -1 if dcd % 2 else 1)]
            for x in d:
                if not x:
                    continue
                new = []
                for e2, c in terms:
                    budget = 2 * max_q - e2
                    if budget < 0:
                        continue
                    for j, cj in enumerate(_inverse_qq_coeffs(x, budget // 2)):
                        if cj:
                            new.append((e2 + 2 * j, c * cj))
                terms = new
            for e2, c in terms:
                if e2 <= 2 * max_q:
                    key = tuple(2 * x for x in d) + (e2,)
                    acc[key] = acc.get(key, 0) + c
    return LaurentPoly(ring, acc)


def rebuild_product(table: DTTable, max_deg: int, max_q) -> LaurentPoly:
    """prod (1 - x^d q^{(j+1)/2+k})^{(-1)^{j+1+|d|} Omega}, truncated in |d| and q.

    Factors with j < -1 carry negative q-powers; intermediate products are
    kept up to a widened cutoff so the final truncation is exact.
    """
    m = table.m
    ring = _xring(m)
    # lowest q-power (in half units) any monomial of x-degree <= max_deg can reach
    dip = min([Fraction(j + 1, sum(d)) for (d, j), om in table.entries.items() if om] + [Fraction(0)])
    margin = -dip * max_deg
    cut2 = 2 * max_q + int(margin) + 1
    out = ring.one()
    for (d, j), omega in sorted(table.entries.items()):
        if not omega:
            continue
        power = omega if (j + 1 + sum(d)) % 2 == 0 else -omega
        k = 0
        while (j + 1) + 2 * k <= cut2:
            mono = LaurentPoly(ring, {tuple(2 * x for x in d) + (j + 1 + 2 * k,): 1})
            if power > 0:
                factor = (1 - mono) ** power
            else:
                # (1 - M)^{-p} = sum_n binom(n+p-1, n) M^n
                factor = ring.zero()
                p = -power
                n = 0
                coef = 1
                while n * sum(d) <= max_deg and n * (j + 1 + 2 * k) <= cut2:
                    factor = factor + (mono ** n) * coef
                    n += 1
                    coef = coef * (n + p - 1) // n
            out = _truncate(out * factor, m, max_deg, Fraction(cut2, 2))
            k += 1
    return _truncate(out, m, max_deg, max_q)
