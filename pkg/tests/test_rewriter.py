from collections import Counter

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from knotquivers import knotdb, rewriter
from knotquivers.ansatz import eval_special_form
from knotquivers.knotdb import SpecialFormData
from knotquivers.quiver import eval_quiver_form
from knotquivers.rewriter import RewriteError, RewritePlan, rewrite

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

# linear a- and q-vectors of the 9_42 quiver, level 1 nodes then level 2 nodes
A_942 = (0, 1, 0, 0, -1, 1, 0, 0, -1) + (
    1, 0, 0, -1, 0, -1, -1, -2, 0, -1, -1, -2, -1, -2, -2, -3, 1, 0, 0, -1, 0, -1, -1, -2,
)
Q_942 = (0, -1, 0, -2, -1, 1, 2, 0, 1) + (
    0, 1, 0, 1, -2, -1, -2, -1, -3, -2, -3, -2, -5, -4, -5, -4, 1, 2, -1, 0, -2, -1, -4, -3,
)


def test_trefoil():
    Q = rewrite(knotdb.get_knot("3_1"), check_r=5).quiver
    assert Q.C == ((0, 1, 1), (1, 2, 2), (1, 2, 3))
    assert [(nd.s, nd.a, nd.q) for nd in Q.nodes] == [(0, 1, -1), (0, 1, 1), (1, 2, 0)]


def test_5_1_orderings():
    data = knotdb.get_knot("5_1")
    first = rewrite(data, RewritePlan((1, 2, 3))).quiver
    second = rewrite(data, RewritePlan((1, 3, 2))).quiver
    assert first.C == C51_FIRST
    assert second.C == C51_SECOND
    assert [nd.s for nd in first.nodes] == [0, 0, 1, 0, 1]
    assert [nd.a for nd in first.nodes] == [2, 2, 3, 2, 3]
    assert [nd.q for nd in first.nodes] == [-2, 0, -1, 2, 1]
    # both are valid quivers for the same knot
    for r in range(5):
        assert eval_quiver_form(first, r) == eval_quiver_form(second, r)


def test_5_1_enumeration():
    found = rewriter.enumerate_orderings(knotdb.get_knot("5_1"), r_check=3)
    mats = {Q.C for _, Q in found}
    assert {C51_FIRST, C51_SECOND} <= mats
    assert len({tuple(rewriter.diagonal_multiset(Q)) for _, Q in found}) == 1


@pytest.mark.parametrize("name", knotdb.knot_names())
def test_size_law_and_diagonal_signs(name):
    data = knotdb.get_knot(name)
    Q = rewrite(data).quiver
    assert Q.m == rewriter.predicted_size(data)
    assert all(nd.s == c % 2 for nd, c in zip(Q.nodes, Q.diagonal()))


def test_942_shape_and_node_data():
    Q = rewrite(knotdb.get_knot("9_42")).quiver
    assert Q.m == 33
    assert rewriter.level_profile(Q) == {1: 9, 2: 24}
    expected = Counter((1 if i < 9 else 2, x, y) for i, (x, y) in enumerate(zip(A_942, Q_942)))
    assert rewriter.node_triples(Q) == expected


@pytest.mark.parametrize("name", ["3_1", "4_1", "5_2", "6_1", "6_2", "7_1"])
def test_soundness(name):
    res = rewrite(knotdb.get_knot(name), check_r=4)
    assert res.checked_up_to == 4


def test_bad_ordering():
    data = knotdb.get_knot("5_1")
    with pytest.raises(ValueError):
        rewrite(data, RewritePlan((1, 1, 2)))
    with pytest.raises(ValueError):
        rewrite(data, RewritePlan((1, 2)))


def test_enumeration_cap():
    with pytest.raises(RewriteError):
        rewriter.enumerate_orderings(knotdb.get_knot("9_42"), cap=1)


def test_verify_reports_first_bad_r():
    data = knotdb.get_knot("3_1")
    wrong = rewrite(knotdb.get_knot("4_1")).quiver
    with pytest.raises(RewriteError) as info:
        rewriter.verify(data, wrong, 3)
    assert info.value.first_bad_r == 1


def test_result_json():
    d = rewrite(knotdb.get_knot("3_1")).to_dict()
    assert d["predicted_size"] == 3
    assert [p["source"] for p in d["provenance"]] == [1, 2, 2]


@st.composite
def special_forms(draw):
    k = draw(st.integers(1, 3))
    M = [[draw(st.integers(-2, 3)) for _ in range(k)] for _ in range(k)]
    C = [[M[min(i, j)][max(i, j)] for j in range(k)] for i in range(k)]
    n = [draw(st.integers(1, 2)) for _ in range(k)]
    lr = [draw(st.tuples(st.integers(0, x), st.integers(0, x))) for x in n]
    return SpecialFormData(
        name="random",
        C=C,
        n=n,
        a=[draw(st.integers(-2, 2)) for _ in range(k)],
        q=[draw(st.integers(-2, 2)) for _ in range(k)],
        l=[x for x, _ in lr],
        r=[y for _, y in lr],
    )


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(special_forms())
def test_random_data_rewrites_soundly(data):
    # the rewriter either refuses or produces a quiver with the same polynomials
    try:
        Q = rewrite(data).quiver
    except RewriteError:
        return
    for r in range(4):
        assert eval_quiver_form(Q, r) == eval_special_form(data, r).poly
