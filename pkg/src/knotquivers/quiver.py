"""Symmetric quivers with monomial node specializations."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterator, List, Optional, Sequence, Tuple

from .laurent import LaurentPoly, PolyRing, multinomial_coeffs, q_pochhammer

AQ = PolyRing(["a", "q"])
XAQ = PolyRing(["x", "a", "q"])


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Node:
    s: int
    n: int
    a: int
    q: int


@dataclass(frozen=True)
class QuiverData:
    C: Tuple[Tuple[int, ...], ...]
    nodes: Tuple[Node, ...]

    def __post_init__(self):
        object.__setattr__(self, "C", tuple(tuple(int(x) for x in row) for row in self.C))
        object.__setattr__(
            self, "nodes", tuple(nd if isinstance(nd, Node) else Node(**nd) for nd in self.nodes)
        )
        m = len(self.nodes)
        if len(self.C) != m or any(len(row) != m for row in self.C):
            raise QuiverError("C must be an m x m matrix matching the node list")
        for i in range(m):
            for j in range(i):
                if self.C[i][j] != self.C[j][i]:
                    raise QuiverError(f"C is not symmetric at ({i},{j})")
        for nd in self.nodes:
            if nd.s not in (0, 1):
                raise QuiverError("sign exponents must be 0 or 1")
            if nd.n < 1:
                raise QuiverError("node levels must be >= 1")

    @property
    def m(self) -> int:
        return len(self.nodes)

    @property
    def levels(self) -> Tuple[int, ...]:
        return tuple(nd.n for nd in self.nodes)

    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.C[i][i] for i in range(self.m))

    def to_dict(self) -> dict:
        return {
            "C": [list(row) for row in self.C],
            "nodes": [{"s": nd.s, "n": nd.n, "a": nd.a, "q": nd.q} for nd in self.nodes],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "QuiverData":
        try:
            return cls(C=d["C"], nodes=tuple(Node(int(x["s"]), int(x["n"]), int(x["a"]), int(x["q"])) for x in d["nodes"]))
        except (KeyError, TypeError) as exc:
            raise QuiverError(f"malformed quiver data: {exc}") from exc

    def canonical(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def load_quiver(path) -> QuiverData:
    try:
        raw = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise QuiverError(f"{path}: invalid JSON ({exc})") from exc
    return QuiverData.from_dict(raw)


def save_quiver(Q: QuiverData, path) -> None:
    Path(path).write_text(json.dumps(Q.to_dict(), indent=1) + "\n")


def degree_lattice(levels, r: int) -> Iterator[Tuple[int, ...]]:
    """All d >= 0 with sum n_i d_i = r, in lexicographic order.

    ``levels`` may be a sequence of levels or a QuiverData.
    """
    if isinstance(levels, QuiverData):
        levels = levels.levels
    levels = tuple(levels)
    k = len(levels)
    if r < 0:
        return
    if k == 0:
        if r == 0:
            yield ()
        return

    def rec(i, remaining, prefix):
        if i == k - 1:
            if remaining % levels[i] == 0:
                yield prefix + (remaining // levels[i],)
            return
        for d in range(remaining // levels[i] + 1):
            yield from rec(i + 1, remaining - d * levels[i], prefix + (d,))

    yield from rec(0, r, ())


@lru_cache(maxsize=None)
def qq(k: int) -> LaurentPoly:
    """(q;q)_k over (a, q)."""
    q = AQ.gen("q")
    return q_pochhammer(q, q, k)


@lru_cache(maxsize=None)
def level_multinomial(r: int, d: Tuple[int, ...]) -> LaurentPoly:
    """(q;q)_r / prod (q;q)_{d_i} as a polynomial, for sum d_i <= r."""
    rest = r - sum(d)
    if rest < 0:
        raise QuiverError("sum of d exceeds r")
    coeffs = multinomial_coeffs(tuple(d) + (rest,))
    terms = {(0, 2 * j): c for j, c in enumerate(coeffs) if c}
    return LaurentPoly(AQ, terms) * qq(rest)


def quadratic_form(C, d) -> int:
    return sum(C[i][j] * d[i] * d[j] for i in range(len(d)) for j in range(len(d)) if d[i] and d[j])


def eval_quiver_form(Q: QuiverData, r: int) -> LaurentPoly:
    """Exact colored polynomial of a quiver in generalized quiver form."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    acc = {}
    diag = Q.diagonal()
    for d in degree_lattice(Q, r):
        dcd = quadratic_form(Q.C, d)
        tr = sum(c * x for c, x in zip(diag, d))
        if (dcd - tr) % 2:
            raise QuiverError("non-integral quadratic q-exponent")
        qe = sum(nd.q * x for nd, x in zip(Q.nodes, d)) + (dcd - tr) // 2
        ae = sum(nd.a * x for nd, x in zip(Q.nodes, d))
        sign = -1 if tr % 2 else 1
        for (_, e), c in level_multinomial(r, d).terms.items():
            key = (2 * ae, e + 2 * qe)
            acc[key] = acc.get(key, 0) + sign * c
    return LaurentPoly(AQ, acc)


@lru_cache(maxsize=None)
def _inverse_qq_coeffs(k: int, cutoff: int) -> Tuple[int, ...]:
    """Coefficients of 1/(q;q)_k up to q^cutoff (partitions into parts <= k)."""
    out = [0] * (cutoff + 1)
    if cutoff < 0:
        return ()
    out[0] = 1
    for part in range(1, k + 1):
        for n in range(part, cutoff + 1):
            out[n] += out[n - part]
    return tuple(out)


def quiver_series(C, specialization: Sequence[LaurentPoly], max_x: int, max_q=None, ring: PolyRing = XAQ) -> LaurentPoly:
    """Truncated generating series sum_d (-q^(1/2))^(dCd) / prod (q;q)_{d_i} prod x_i^{d_i}.

    ``specialization[i]`` is the monomial substituted for x_i (over ``ring``,
    which must contain x and q); terms with x-degree above ``max_x`` are
    dropped.  Each 1/(q;q)_{d_i} is an infinite series, so a q-cutoff
    ``max_q`` (true exponent) is required unless every d with nonzero
    contribution is zero; the result is then exact for q-degree <= max_q.
    """
    m = len(C)
    if len(specialization) != m:
        raise QuiverError("one specialization monomial per node is required")
    xi = ring.index["x"]
    qi = ring.index["q"]
    levels = []
    mons = []
    for s in specialization:
        if not s.is_monomial():
            raise QuiverError("node specializations must be monomials")
        e, c = s.monomial_data()
        if e[xi] <= 0 or e[xi] % 2:
            raise QuiverError("each node must carry a positive integral power of x")
        levels.append(e[xi] // 2)
        mons.append((e, c))
    if m and max_x > 0 and max_q is None:
        raise QuiverError("a q-cutoff is required to truncate 1/(q;q) denominators")
    acc = {}
    for deg in range(max_x + 1):
        for d in degree_lattice(levels, deg):
            dcd = quadratic_form(C, d)
            coeff = -1 if dcd % 2 else 1
            e = [0] * len(ring.names)
            e[qi] += dcd
            for (me, mc), x in zip(mons, d):
                if x:
                    coeff *= mc ** x
                    for i, v in enumerate(me):
                        e[i] += v * x
            prefactor = [(tuple(e), coeff)]
            for x in d:
                if not x:
                    continue
                new = []
                for pe, pc in prefactor:
                    budget = 2 * max_q - pe[qi]
                    if budget < 0:
                        continue
                    for j, cj in enumerate(_inverse_qq_coeffs(x, budget // 2)):
                        if cj:
                            ne = list(pe)
                            ne[qi] += 2 * j
                            new.append((tuple(ne), pc * cj))
                prefactor = new
            for pe, pc in prefactor:
                if max_q is not None and any(d) and pe[qi] > 2 * max_q:
                    continue
                acc[pe] = acc.get(pe, 0) + pc
    return LaurentPoly(ring, acc)


def node_specialization(Q: QuiverData, ring: PolyRing = XAQ, kq_shift: bool = True) -> List[LaurentPoly]:
    """Monomials x_i for which quiver_series matches eval_quiver_form.

    With ``kq_shift`` the q-power is q_i - C_ii/2 and the sign is dropped,
    absorbing the (-1)^{C_ii d_i} q^{-C_ii d_i/2} factors of the quiver form
    into the node variables; otherwise (-1)^{s_i} a^{a_i} q^{q_i} x^{n_i}.
    """
    out = []
    for i, nd in enumerate(Q.nodes):
        e = [0] * len(ring.names)
        e[ring.index["x"]] = 2 * nd.n
        e[ring.index["a"]] = 2 * nd.a
        if kq_shift:
            e[ring.index["q"]] = 2 * nd.q - Q.C[i][i]
            c = 1
        else:
            e[ring.index["q"]] = 2 * nd.q
            c = -1 if nd.s else 1
        out.append(LaurentPoly(ring, {tuple(e): c}))
    return out


def series_coefficient(series: LaurentPoly, r: int, target: PolyRing = AQ) -> LaurentPoly:
    """Coefficient of x^r of a series over (x, a, q), moved to ``target``."""
    part = series.coefficient("x", r)
    return part.to_ring(target)
