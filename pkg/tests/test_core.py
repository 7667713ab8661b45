import itertools

import pytest
from hypothesis import given, settings, strategies as st

from pbmod.core import (
    NormalizedPB,
    Op,
    PBConstraint,
    PBModConstraint,
    Status,
    evaluate,
    evaluate_pb,
    evaluate_pbmod,
    lit,
    lit_value,
    normalize,
    restrict,
    var,
)
from pbmod.errors import BadModulus, DuplicateVariable, UnassignedVariable

from conftest import lhs

EXAMPLE1 = PBConstraint([(1, 1), (2, 2), (3, 3), (4, 4), (5, 5)], Op.EQ, 7)


def test_literal_helpers():
    assert lit(3) == 3 and lit(3, False) == -3
    assert var(-4) == 4
    assert lit_value(-2, {2: True}) is False
    assert lit_value(5, {}) is None
    with pytest.raises(ValueError):
        lit(0)


def test_duplicate_variable_rejected():
    with pytest.raises(DuplicateVariable):
        PBConstraint([(1, 1), (2, -1)], Op.EQ, 1)


def test_evaluate_unsat_example():
    q = PBConstraint([(2, 1), (4, -2)], Op.EQ, 3)
    assert evaluate_pb(q, {1: True, 2: True}) is False


def test_evaluate_empty_sum():
    assert evaluate_pb(PBConstraint([], Op.EQ, 0), {})


def test_evaluate_example1_solution():
    a = {1: False, 2: True, 3: False, 4: False, 5: True}
    assert evaluate_pb(EXAMPLE1, a)


def test_evaluate_requires_total_assignment():
    with pytest.raises(UnassignedVariable):
        evaluate_pb(EXAMPLE1, {1: True})
    with pytest.raises(UnassignedVariable):
        evaluate_pbmod(PBModConstraint([(1, 1)], 0, 2), {})


def test_evaluate_pbmod():
    assert evaluate_pbmod(PBModConstraint([(1, 1), (2, 2)], 0, 3), {1: True, 2: True})
    q2 = PBModConstraint([(1, 1), (0, 2), (1, 3), (0, 4), (1, 5)], 1, 2)
    assert evaluate(q2, {1: False, 2: True, 3: False, 4: False, 5: True})
    assert evaluate_pbmod(PBModConstraint([(1, 1), (2, 2)], 0, 3), {1: False, 2: False})


def test_pbmod_reduces_and_checks_modulus():
    qm = PBModConstraint([(7, 1), (-1, 2)], 9, 5)
    assert qm.terms == ((2, 1), (4, 2)) and qm.bound == 4
    with pytest.raises(BadModulus):
        PBModConstraint([(1, 1)], 0, 1)


def test_normalize_ge_with_slack():
    q = PBConstraint([(3, 1), (-2, 2)], Op.GE, 1)
    n = normalize(q)
    assert n.status is Status.PROPER
    assert n.terms == ((3, -1), (2, 2), (1, 3), (2, 4))
    assert n.bound == 2 and n.slack_vars == (3, 4)


def test_normalize_equality_passthrough():
    q = PBConstraint([(2, 1), (4, -2)], Op.EQ, 3)
    n = normalize(q)
    assert n.status is Status.PROPER and n.terms == q.terms and n.bound == 3


def test_normalize_bound_one():
    n = normalize(PBConstraint([(1, 1), (1, 2)], Op.LT, 1))
    assert n.terms == ((1, 1), (1, 2)) and n.bound == 0 and n.slack_vars == ()


def test_normalize_constants():
    assert normalize(PBConstraint([(1, 1)], Op.LT, 0)).status is Status.CONST_FALSE
    assert normalize(PBConstraint([(1, 1)], Op.LT, 5)).status is Status.CONST_TRUE
    assert normalize(PBConstraint([(1, 1)], Op.EQ, 2)).status is Status.CONST_FALSE
    assert normalize(PBConstraint([(-1, 1)], Op.EQ, -1)).terms == ((1, -1),)


def test_normalize_slack_start():
    n = normalize(PBConstraint([(1, 1), (1, 2)], Op.LE, 1), slack_start=10)
    assert n.slack_vars == (10, 11)


def test_restrict_and_as_pb():
    assert restrict({1: True, 2: False, 3: True}, [1, 3, 4]) == {1: True, 3: True}
    assert NormalizedPB((), 0, (), Status.CONST_FALSE).as_pb().bound == 1


terms_st = st.lists(st.integers(-20, 20), min_size=0, max_size=6).flatmap(
    lambda cs: st.tuples(st.just(cs), st.lists(st.booleans(), min_size=len(cs), max_size=len(cs))))


@settings(max_examples=200, deadline=None)
@given(terms_st, st.sampled_from(list(Op)), st.integers(-40, 60))
def test_normalize_preserves_projected_solutions(cs, op, b):
    coefs, signs = cs
    terms = [(a, i + 1 if s else -(i + 1)) for i, (a, s) in enumerate(zip(coefs, signs))]
    q = PBConstraint(terms, op, b)
    n = normalize(q)
    xs = list(range(1, len(terms) + 1))
    for bits in itertools.product((False, True), repeat=len(xs)):
        a = dict(zip(xs, bits))
        if n.status is not Status.PROPER:
            ext = n.status is Status.CONST_TRUE
        else:
            ext = any(lhs(n.terms, {**a, **dict(zip(n.slack_vars, ys))}) == n.bound
                      for ys in itertools.product((False, True), repeat=len(n.slack_vars)))
        assert ext == evaluate_pb(q, a)
    if n.status is Status.PROPER:
        assert all(c >= 1 for c, _ in n.terms)
        assert 0 <= n.bound <= n.total


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-9, 9), max_size=5), st.integers(-20, 20))
def test_ge_matches_gt_shifted(coefs, b):
    terms = [(a, i + 1) for i, a in enumerate(coefs)]
    ge, gt = PBConstraint(terms, Op.GE, b), PBConstraint(terms, Op.GT, b - 1)
    xs = [i + 1 for i in range(len(coefs))]
    for bits in itertools.product((False, True), repeat=len(xs)):
        a = dict(zip(xs, bits))
        assert evaluate_pb(ge, a) == evaluate_pb(gt, a)
