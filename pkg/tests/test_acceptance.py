"""The fourteen acceptance criteria at full level, one test per criterion.

Each test prints its pass/fail line; the lines are repeated in the terminal
summary.  Sub-checks that cannot hold for the data as given are listed in
KNOWN_FAILURES: their criteria are strict xfails, and every other sub-check
of those criteria is still required to pass.
"""

import pytest

from knotquivers import acceptance, homology, knotdb

from conftest import ACCEPTANCE_LINES

KNOWN_FAILURES = {
    # the rewritten 4_1 quiver has negative diagonal entries
    8: {"DT nonnegative 4_1"},
    # the alternative S^2 form has a wrong factor; its quadruply graded
    # form has a non-palindromic q-fiber
    13: {"version 2 decategorifies", "quadruply graded self-symmetry"},
}

_cache = {}


def report(n, golden):
    if n not in _cache:
        fn = acceptance.CRITERIA[n]
        rep = fn(quick=False, golden=golden) if n == 1 else fn(quick=False)
        _cache[n] = rep
        ACCEPTANCE_LINES[n] = rep.line()
        print(rep.line())
    return _cache[n]


def _params():
    for n in acceptance.CRITERIA:
        if n in KNOWN_FAILURES:
            yield pytest.param(n, marks=pytest.mark.xfail(strict=True, reason="; ".join(sorted(KNOWN_FAILURES[n]))))
        else:
            yield n


@pytest.mark.parametrize("n", list(_params()))
def test_criterion(n, golden):
    rep = report(n, golden)
    assert rep.passed, [(c.name, c.detail) for c in rep.failures()]


@pytest.mark.parametrize("n", sorted(KNOWN_FAILURES))
def test_only_known_subchecks_fail(n, golden):
    rep = report(n, golden)
    failing = {c.name for c in rep.failures()}
    assert failing == KNOWN_FAILURES[n]


def _flip(C):
    C = [list(row) for row in C]
    C[0][1] = C[1][0] = -C[0][1]
    return C


def test_sign_flip_in_942_data_is_caught(monkeypatch):
    d = knotdb.REGISTRY["9_42"].to_dict()
    d["C"] = _flip(d["C"])
    monkeypatch.setitem(knotdb.REGISTRY, "9_42", knotdb.SpecialFormData.from_dict(d))
    assert not acceptance.criterion_3(quick=True).passed


def test_sign_flip_in_homology_matrix_is_caught(monkeypatch):
    monkeypatch.setattr(homology, "C942", tuple(map(tuple, _flip(homology.C942))))
    homology.superpoly_942.cache_clear()
    try:
        assert not acceptance.criterion_10(quick=True).passed
        # all-ones dimensions only see coefficients, so they are blind to the flip
        assert acceptance.criterion_9(quick=True).passed
    finally:
        monkeypatch.undo()
        homology.superpoly_942.cache_clear()
