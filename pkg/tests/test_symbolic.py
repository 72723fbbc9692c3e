from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from convgeom.errors import ConsistencyError
from convgeom.symbolic import (
    NATURALS,
    POINT,
    WHOLE,
    SymbolicSet,
    aep_holds,
    is_closed,
    sym_check_aep,
    sym_closure,
    sym_nonalgebraic_witness,
    sym_standardness_witness,
)

# one representative per kind/x-membership combination
FINITE = SymbolicSet.finite({1, 2})
FINITE_X = SymbolicSet.finite({1, 2}, has_x=True)
COFINITE = SymbolicSet.cofinite({3}, has_x=False)
COFINITE_X = SymbolicSet.cofinite({3}, has_x=True)
REPRESENTATIVES = [FINITE, FINITE_X, COFINITE, COFINITE_X, SymbolicSet.finite(), NATURALS, WHOLE]


def test_closure_rule_examples():
    assert sym_closure(SymbolicSet.of([POINT])) == WHOLE
    assert sym_closure(FINITE) == FINITE
    assert sym_closure(NATURALS) == WHOLE
    assert not is_closed(NATURALS)


@pytest.mark.parametrize("s", REPRESENTATIVES, ids=str)
def test_closure_is_extensive_and_idempotent(s):
    c = sym_closure(s)
    assert s.issubset(c)
    assert sym_closure(c) == c


@pytest.mark.parametrize("a", REPRESENTATIVES, ids=str)
@pytest.mark.parametrize("b", REPRESENTATIVES, ids=str)
def test_closure_is_monotone(a, b):
    if a.issubset(b):
        assert sym_closure(a).issubset(sym_closure(b))


def test_subset_relation_cases():
    assert FINITE.issubset(COFINITE)
    assert not SymbolicSet.finite({3}).issubset(COFINITE)
    assert not COFINITE.issubset(FINITE)
    assert NATURALS.issubset(WHOLE) and not WHOLE.issubset(NATURALS)
    assert COFINITE.issubset(NATURALS)
    assert not FINITE_X.issubset(NATURALS)


def test_membership_and_editing():
    assert 5 in NATURALS and POINT not in NATURALS
    assert 7 not in NATURALS.remove(7)
    assert NATURALS.remove(7).add(7) == NATURALS
    assert FINITE.add(POINT) == FINITE_X
    with pytest.raises(ValueError):
        SymbolicSet.finite({-1})


@pytest.mark.parametrize(
    "a, y, z",
    [
        (SymbolicSet.finite({1, 2}), 3, 4),
        (SymbolicSet.finite(), 5, POINT),
        (SymbolicSet.finite(), POINT, 5),
        (SymbolicSet.finite({0, 9}), 9 + 1, POINT),
    ],
)
def test_aep_cases(a, y, z):
    # every branch of the rule: neither point is x, z is x, y is x
    assert aep_holds(a, y, z)
    assert aep_holds(a, z, y)


def test_aep_case_with_x_added():
    a = SymbolicSet.finite()
    # y = 5 lies in phi(A + x) = X, so 'x' must stay out of phi(A + 5) = {5}
    assert 5 in sym_closure(a.add(POINT))
    assert POINT not in sym_closure(a.add(5))


@given(st.frozensets(st.integers(0, 30), max_size=6), st.integers(0, 40), st.integers(0, 40))
def test_aep_on_finite_samples(support, y, z):
    a = SymbolicSet.finite(support)
    for p, q in [(y, z), (y, POINT), (POINT, z)]:
        if p != q and p not in a and q not in a:
            assert aep_holds(a, p, q)


def test_sampled_aep_report():
    report = sym_check_aep(10_000, seed=3)
    assert report.ok and report.trials == 10_000 and report.violations == 0
    assert str(sym_check_aep(100, seed=3)) == "aep trials=100 violations=0 seed=3"


def test_standardness_witness_is_pinned():
    w = sym_standardness_witness()
    assert (w.point_closure, w.punctured, w.punctured_closure) == (WHOLE, NATURALS, WHOLE)
    assert w.fails
    assert (str(w.point_closure), str(w.punctured)) == ("X", "N")


def test_nonalgebraic_witness_is_pinned():
    w = sym_nonalgebraic_witness()
    assert (w.subset, w.closure, w.finite_union) == (NATURALS, WHOLE, NATURALS)
    assert w.fails and w.gap == (POINT,)


def test_nonalgebraic_witness_other_inputs():
    ok = sym_nonalgebraic_witness(SymbolicSet.finite({1, 2}))
    assert not ok.fails and ok.gap == ()
    shifted = sym_nonalgebraic_witness(NATURALS.remove(7))
    assert shifted.fails and shifted.gap == (POINT, 7)


def test_every_finite_subset_of_naturals_is_closed():
    # the union of finite closures inside N cannot reach x
    for support in [set(), {0}, {1, 2, 3}, set(range(50))]:
        b = SymbolicSet.finite(support)
        assert sym_closure(b) == b and POINT not in sym_closure(b)


def test_aep_violation_is_fatal(monkeypatch):
    import convgeom.symbolic as sym

    monkeypatch.setattr(sym, "aep_holds", lambda a, y, z: False)
    with pytest.raises(ConsistencyError):
        sym.sym_check_aep(5, 0)
