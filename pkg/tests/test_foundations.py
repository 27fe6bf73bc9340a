from itertools import product

import pytest
from hypothesis import given, strategies as st

from dwdefect.errors import InvalidPoset, NotReflexive, NotTransitive
from dwdefect.foundations import (FinitePreorder, PosetOnClasses, ValidationReport,
                                  compose_preorder, decompose_preorder,
                                  reflexive_transitive_closure)


def relations(max_n=6):
    return st.integers(1, max_n).flatmap(
        lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)))))


def test_total_preorder_on_two_points_is_one_class():
    p = FinitePreorder(2, frozenset(product(range(2), repeat=2)))
    q = decompose_preorder(p)
    assert q.classes == {0: frozenset({0, 1})}
    assert q.order == {(0, 0)}


def test_chain_stays_a_chain():
    p = reflexive_transitive_closure(3, [(0, 1), (1, 2)])
    q = decompose_preorder(p)
    assert len(q.classes) == 3
    assert (0, 2) in q.order and (2, 0) not in q.order


def test_missing_reflexive_pair():
    with pytest.raises(NotReflexive):
        decompose_preorder(FinitePreorder(2, frozenset({(0, 0)})))


def test_missing_transitive_pair():
    rel = {(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)}
    with pytest.raises(NotTransitive):
        decompose_preorder(FinitePreorder(3, frozenset(rel)))


def test_compose_rejects_cycles_between_classes():
    q = PosetOnClasses(2, {0: frozenset({0}), 1: frozenset({1})},
                       frozenset({(0, 0), (1, 1), (0, 1), (1, 0)}))
    with pytest.raises(InvalidPoset):
        compose_preorder(q)


def test_compose_rejects_overlapping_blocks():
    q = PosetOnClasses(2, {0: frozenset({0, 1}), 1: frozenset({1})}, frozenset({(0, 0), (1, 1)}))
    with pytest.raises(InvalidPoset):
        compose_preorder(q)


@given(relations())
def test_round_trip_through_classes(nr):
    n, pairs = nr
    p = reflexive_transitive_closure(n, pairs)
    q = decompose_preorder(p)
    assert compose_preorder(q) == p
    # blocks are exactly the mutual-reachability classes
    for a, b in product(range(n), repeat=2):
        same = (a, b) in p.rel and (b, a) in p.rel
        assert (q.class_of(a) == q.class_of(b)) == same


@given(relations())
def test_closure_is_idempotent(nr):
    n, pairs = nr
    p = reflexive_transitive_closure(n, pairs)
    assert reflexive_transitive_closure(n, p.rel) == p


def test_report_keeps_first_message_and_ands_checks():
    r = ValidationReport()
    r.record("x", True)
    r.record("x", False, "first")
    r.record("x", False, "second")
    assert not r.ok and r.failures() == ["x"]
    assert r.lines() == ["x\tFAIL\tfirst"]
