"""Rewrite special-form data into a true symmetric quiver.

Every trailing Pochhammer (w; q^-1)_{c.d} is first split along an ordering
of the source nodes,

    (w; q^-1)_{A+B} = (w; q^-1)_A (w q^-A; q^-1)_B,

then each node segment (z; q^-1)_{c_i d_i} is cut into c_i factors
(z q^{-alpha d_i}; q^-1)_{d_i}.  Each such factor is expanded with the
q-binomial theorem, introducing a binomial [d_i; I].  The binomials of one
node are absorbed into 1/(q;q)_{d_i} one after another with the
q-Vandermonde identity, which doubles the number of parts each time.

All exponents are tracked as exact quadratic forms in the new dimension
vector, from which the quiver matrix and node data are read off.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .ansatz import eval_special_form
from .knotdb import SpecialFormData
from .quiver import Node, QuiverData, eval_quiver_form


class RewriteError(RuntimeError):
    def __init__(self, message, first_bad_r=None):
        super().__init__(message)
        self.first_bad_r = first_bad_r


@dataclass(frozen=True)
class RewritePlan:
    """Ordering (1-based node labels) used to split the Pochhammers."""

    ordering: Tuple[int, ...]
    positive_first: bool = True
    policy: str = "identity"


@dataclass
class RewriteResult:
    quiver: QuiverData
    provenance: List[Tuple[int, str]]
    predicted_size: int
    plan: RewritePlan
    checked_up_to: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "plan": {
                "ordering": list(self.plan.ordering),
                "positive_first": self.plan.positive_first,
                "policy": self.plan.policy,
            },
            "predicted_size": self.predicted_size,
            "quiver": self.quiver.to_dict(),
            "provenance": [{"source": s, "branch": b} for s, b in self.provenance],
            "checked_up_to": self.checked_up_to,
        }


def predicted_size(data: SpecialFormData) -> int:
    total = 0
    for i in range(data.k):
        total += 2 ** _binomial_count(data, i)
    return total


def _binomial_count(data: SpecialFormData, i: int) -> int:
    return data.l[i] + sum(b.coeff[i] for b in data.positive_blocks())


def default_plan(data: SpecialFormData) -> RewritePlan:
    return RewritePlan(tuple(range(1, data.k + 1)))


# ---------------------------------------------------------------------------
# linear and quadratic forms in the output variables


class Lin:
    __slots__ = ("c", "v")

    def __init__(self, v=None, c=0):
        self.v = {k: Fraction(x) for k, x in (v or {}).items() if x}
        self.c = Fraction(c)

    def __add__(self, o):
        if not isinstance(o, Lin):
            return Lin(self.v, self.c + o)
        v = dict(self.v)
        for k, x in o.v.items():
            v[k] = v.get(k, 0) + x
        return Lin(v, self.c + o.c)

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, o):
        return self + (-o if isinstance(o, Lin) else -Fraction(o))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, k):
        return Lin({a: x * k for a, x in self.v.items()}, self.c * k)

    __rmul__ = __mul__


class Quad:
    """Accumulator for a quadratic polynomial in the output variables."""

    def __init__(self):
        self.quad: Dict[Tuple[int, int], Fraction] = {}
        self.lin: Dict[int, Fraction] = {}
        self.const = Fraction(0)

    def add_lin(self, f: Lin, k=1):
        for a, x in f.v.items():
            self.lin[a] = self.lin.get(a, 0) + k * x
        self.const += k * f.c

    def add_product(self, f: Lin, g: Lin, k=1):
        for a, x in f.v.items():
            for b, y in g.v.items():
                key = (min(a, b), max(a, b))
                self.quad[key] = self.quad.get(key, 0) + k * x * y
            if g.c:
                self.lin[a] = self.lin.get(a, 0) + k * x * g.c
        if f.c:
            for b, y in g.v.items():
                self.lin[b] = self.lin.get(b, 0) + k * f.c * y
        self.const += k * f.c * g.c


def _integer(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise RewriteError(f"non-integral {what}: {x}")
    return int(x)


# ---------------------------------------------------------------------------


@dataclass
class _Binomial:
    node: int
    base: Lin  # q-exponent of w = a^-1 q^base, as a form in the output variables


def _pochhammers(data: SpecialFormData, D: List[Lin], plan: RewritePlan):
    """List of (coeff vector, base form) for every trailing Pochhammer."""
    pos = []
    for b in data.positive_blocks():
        base = Lin(c=1) - sum((D[i] * b.shift[i] for i in range(data.k)), Lin())
        pos.append((b.coeff, base))
    r_form = sum((D[i] * data.n[i] for i in range(data.k)), Lin())
    neg = [(data.l, -r_form)]
    return pos + neg if plan.positive_first else neg + pos


def rewrite(data: SpecialFormData, plan: Optional[RewritePlan] = None, check_r: Optional[int] = None) -> RewriteResult:
    """Rewrite ``data`` into a quiver; optionally verify against the special form up to ``check_r``."""
    plan = plan or default_plan(data)
    k = data.k
    order = [x - 1 for x in plan.ordering]
    if sorted(order) != list(range(k)):
        raise ValueError(f"ordering must be a permutation of 1..{k}")

    counts = [_binomial_count(data, i) for i in range(k)]
    # output nodes: grouped by source node, branches in lexicographic order (0 = i, 1 = j)
    outputs: List[List[int]] = []
    provenance: List[Tuple[int, str]] = []
    bits: List[Tuple[int, ...]] = []
    idx = 0
    for i in range(k):
        mine = []
        for br in itertools.product((0, 1), repeat=counts[i]):
            mine.append(idx)
            bits.append(br)
            provenance.append((i + 1, "".join("ij"[b] for b in br)))
            idx += 1
        outputs.append(mine)
    m = idx
    D = [Lin({o: 1 for o in outputs[i]}) for i in range(k)]

    # binomials of every node, in expansion order
    binoms: List[List[_Binomial]] = [[] for _ in range(k)]
    for coeff, base in _pochhammers(data, D, plan):
        offset = Lin()
        for i in order:
            c = coeff[i]
            for alpha in range(c):
                binoms[i].append(_Binomial(i, base - offset - D[i] * alpha))
            offset = offset + D[i] * c

    q_exp = Quad()
    a_exp = Lin()
    sign = Lin()
    for i in range(k):
        sign = sign + D[i] * data.C[i][i]
        a_exp = a_exp + D[i] * data.a[i]
        q_exp.add_lin(D[i], data.q[i])
        q_exp.add_lin(D[i], Fraction(-data.C[i][i], 2))
        for j in range(k):
            if data.C[i][j]:
                q_exp.add_product(D[i], D[j], Fraction(data.C[i][j], 2))

    for i in range(k):
        for t, b in enumerate(binoms[i]):
            I = Lin({o: 1 for o in outputs[i] if bits[o][t] == 0})
            sign = sign + I
            a_exp = a_exp - I
            # w^I q^{(1-d) I + (I^2 - I)/2}
            q_exp.add_product(b.base, I)
            q_exp.add_product(Lin(c=1) - D[i], I)
            q_exp.add_product(I, I, Fraction(1, 2))
            q_exp.add_lin(I, Fraction(-1, 2))
            # q-Vandermonde cross terms over the parts that existed before this binomial
            if t:
                parts = sorted({bits[o][:t] for o in outputs[i]})
                for u1, u2 in itertools.combinations(parts, 2):
                    f = Lin({o: 1 for o in outputs[i] if bits[o][: t + 1] == u1 + (0,)})
                    g = Lin({o: 1 for o in outputs[i] if bits[o][: t + 1] == u2 + (1,)})
                    q_exp.add_product(f, g)

    if q_exp.const or a_exp.c or sign.c:
        raise RewriteError("constant term in derived exponents")
    C = [[0] * m for _ in range(m)]
    for (o, p), x in q_exp.quad.items():
        if o == p:
            C[o][o] = _integer(2 * x, "diagonal entry")
        else:
            C[o][p] = C[p][o] = _integer(x, "off-diagonal entry")
    nodes = []
    for o in range(m):
        src = provenance[o][0] - 1
        s = _integer(sign.v.get(o, Fraction(0)), "sign") % 2
        if s != C[o][o] % 2:
            raise RewriteError(f"sign of node {o + 1} does not match its diagonal entry")
        qo = _integer(q_exp.lin.get(o, Fraction(0)) + Fraction(C[o][o], 2), "q-power")
        ao = _integer(a_exp.v.get(o, Fraction(0)), "a-power")
        nodes.append(Node(s=s, n=data.n[src], a=ao, q=qo))
    quiver = QuiverData(C=C, nodes=tuple(nodes))
    if quiver.m != predicted_size(data):
        raise RewriteError("output size differs from the size law")
    result = RewriteResult(quiver, provenance, predicted_size(data), plan)
    if check_r is not None:
        verify(data, quiver, check_r)
        result.checked_up_to = check_r
    return result


def default_check_r(data: SpecialFormData) -> int:
    return 3 if data.k >= 5 or predicted_size(data) > 20 else 4


def verify(data: SpecialFormData, quiver: QuiverData, r_check: int) -> None:
    for r in range(r_check + 1):
        if eval_quiver_form(quiver, r) != eval_special_form(data, r).poly:
            raise RewriteError(f"quiver form differs from the special form at r={r}", first_bad_r=r)


def active_nodes(data: SpecialFormData) -> List[int]:
    """Nodes whose position in the ordering can matter (1-based)."""
    out = []
    for i in range(data.k):
        if any(b.coeff[i] for b in data.positive_blocks()) or data.l[i]:
            out.append(i + 1)
    return out


def enumerate_orderings(data: SpecialFormData, r_check: Optional[int] = None, cap: int = 720):
    """All ordering-induced quivers, verified and deduplicated.

    Only the relative order of active nodes is permuted; inactive nodes
    keep their positions.
    """
    act = active_nodes(data)
    count = 1
    for x in range(2, len(act) + 1):
        count *= x
    if count > cap:
        raise RewriteError(f"{count} orderings exceed the cap of {cap}")
    if r_check is None:
        r_check = default_check_r(data)
    seen = {}
    slots = [i for i in range(data.k) if i + 1 in act]
    for perm in itertools.permutations(act):
        ordering = list(range(1, data.k + 1))
        for s, v in zip(slots, perm):
            ordering[s] = v
        plan = RewritePlan(tuple(ordering), policy="permutation")
        res = rewrite(data, plan)
        key = res.quiver.canonical()
        if key in seen:
            continue
        verify(data, res.quiver, r_check)
        seen[key] = (plan, res.quiver)
    return list(seen.values())


def diagonal_multiset(Q: QuiverData) -> List[int]:
    return sorted(Q.diagonal())


def level_profile(Q: QuiverData) -> Dict[int, int]:
    return dict(sorted(Counter(Q.levels).items()))


def node_triples(Q: QuiverData) -> Counter:
    return Counter((nd.n, nd.a, nd.q) for nd in Q.nodes)
