import itertools

import pytest
from hypothesis import given, settings, strategies as st

from pbmod.core import PBModConstraint
from pbmod.pbmod_encoders import (
    batcher_comparators,
    build_sorter,
    dc_root,
    dp_layers,
    encode_card,
    encode_dc,
    encode_dp,
    encode_sorter,
    exact_counts,
)
from pbmod.tseitin import FALSE, TRUE, CnfBuilder
from pbmod.up_engine import Solver, check_valid_translation, unit_propagate

from conftest import root_solutions

ENCODERS = {
    "dp": lambda qm, b: encode_dp(qm, True, b),
    "dp-lean": lambda qm, b: encode_dp(qm, False, b),
    "dc": encode_dc,
    "sorter": encode_sorter,
    "card": encode_card,
}


def build(name, qm):
    return ENCODERS[name](qm, CnfBuilder(max(qm.variables, default=0) + 1))


def congruence_solutions(qm, xs):
    out = set()
    for bits in itertools.product((False, True), repeat=len(xs)):
        a = dict(zip(xs, bits))
        s = sum(c for c, l in qm.terms if a[abs(l)] == (l > 0))
        if s % qm.modulus == qm.bound:
            out.add(bits)
    return out


@pytest.mark.parametrize("name", list(ENCODERS))
def test_parity(name):
    qm = PBModConstraint([(1, 1), (1, 2)], 0, 2)
    assert root_solutions(build(name, qm), [1, 2]) == {(False, False), (True, True)}


def test_strong_dp_state_count():
    qm = PBModConstraint([(1, 1), (1, 2)], 0, 2)
    b = CnfBuilder(3)
    layers = dp_layers(qm, b)
    assert len(layers) == 3 and all(len(layer) == 2 for layer in layers)


def test_zero_terms_fold():
    assert dp_layers(PBModConstraint([(0, 1)], 1, 2), CnfBuilder(2)) is None
    t = build("dp", PBModConstraint([(0, 1)], 1, 2))
    assert unit_propagate(list(t.clauses) + [(t.root,)]).conflict
    t = build("dp", PBModConstraint([(0, 1)], 0, 2))
    assert unit_propagate(list(t.clauses) + [(-t.root,)]).conflict


def test_unreachable_residue_conflicts():
    qm = PBModConstraint([(1, i) for i in range(1, 6)], 6, 7)
    t = build("dp", qm)
    assert unit_propagate(list(t.clauses) + [(t.root,)]).conflict


def test_dc_base_case_is_input():
    b = CnfBuilder(2)
    assert dc_root(PBModConstraint([(1, 1)], 1, 2), b) == 1
    assert len(b.clauses) == 0


def test_dc_odd_split_valid():
    qm = PBModConstraint([(1, 1), (2, 2), (2, 3)], 2, 3)
    assert check_valid_translation(qm, build("dc", qm))


def test_comparator_is_or_and():
    b = CnfBuilder(3)
    hi, lo = build_sorter(b, [1, 2])
    assert b.clauses.clauses[:3] == [(-hi, 1, 2), (hi, -1), (hi, -2)]
    assert b.clauses.clauses[3:] == [(lo, -1, -2), (-lo, 1), (-lo, 2)]


def test_batcher_size():
    assert len(batcher_comparators(4)) == 5
    assert len(batcher_comparators(8)) == 19
    assert batcher_comparators(1) == []


@pytest.mark.parametrize("width", range(1, 9))
def test_sorter_outputs_sorted(width):
    b = CnfBuilder(width + 1)
    xs = list(range(1, width + 1))
    ys = build_sorter(b, xs)
    es = exact_counts(b, ys)
    solver = Solver(b.clauses.clauses, b.num_vars)
    for bits in itertools.product((False, True), repeat=width):
        lits = [x if v else -x for x, v in zip(xs, bits)]
        res = solver.propagate(lits)
        k = sum(bits)
        val = lambda l: True if l == TRUE else False if l == FALSE else res.implied[abs(l)] == (l > 0)  # noqa: E731
        assert [val(y) for y in ys] == [j < k for j in range(width)]
        assert [val(e) for e in es] == [j == k for j in range(width + 1)]


def test_sorter_repeated_input():
    b = CnfBuilder(2)
    ys = build_sorter(b, [1, 1, 1])
    solver = Solver(b.clauses.clauses, b.num_vars)
    for x in (1, -1):
        res = solver.propagate([x])
        assert all(res.implied[abs(y)] == ((y > 0) == (x > 0)) for y in ys)


def test_sorter_encoder_example():
    qm = PBModConstraint([(1, 1), (2, 2)], 0, 3)
    assert root_solutions(build("sorter", qm), [1, 2]) == {(False, False), (True, True)}


def test_card_classes_example():
    qm = PBModConstraint([(2, 1), (2, 2), (1, 3)], 1, 3)
    sols = root_solutions(build("card", qm), [1, 2, 3])
    assert len(sols) == 2 and sols == congruence_solutions(qm, [1, 2, 3])


def test_card_single_class():
    qm = PBModConstraint([(1, 1), (1, 2), (1, 3)], 2, 3)
    sols = root_solutions(build("card", qm), [1, 2, 3])
    assert sols == {bits for bits in itertools.product((False, True), repeat=3) if sum(bits) == 2}


@pytest.mark.parametrize("name", ["sorter", "card", "dc", "dp"])
@pytest.mark.parametrize("bound", [0, 1])
def test_all_zero_coefficients(name, bound):
    qm = PBModConstraint([(3, 1), (6, 2)], bound, 3)
    t = build(name, qm)
    assert check_valid_translation(qm, t)
    expected = {(a, b) for a in (False, True) for b in (False, True)} if bound == 0 else set()
    assert root_solutions(t, [1, 2]) == expected


@pytest.mark.parametrize("name", list(ENCODERS))
def test_example1_mod5_agrees(name):
    qm = PBModConstraint([(1, 1), (2, 2), (3, 3), (4, 4), (0, 5)], 2, 5)
    assert root_solutions(build(name, qm), [1, 2, 3, 4, 5]) == congruence_solutions(qm, [1, 2, 3, 4, 5])


pbmod_st = st.integers(2, 7).flatmap(lambda M: st.tuples(
    st.just(M),
    st.lists(st.tuples(st.integers(0, M - 1), st.booleans()), min_size=0, max_size=5),
    st.integers(0, M - 1)))


@settings(max_examples=150, deadline=None)
@given(pbmod_st, st.sampled_from(list(ENCODERS)))
def test_encoders_valid_and_exact(data, name):
    M, terms, b = data
    qm = PBModConstraint([(a, i + 1 if pos else -(i + 1)) for i, (a, pos) in enumerate(terms)], b, M)
    t = build(name, qm)
    assert check_valid_translation(qm, t)
    xs = list(range(1, len(terms) + 1))
    assert root_solutions(t, xs) == congruence_solutions(qm, xs)
