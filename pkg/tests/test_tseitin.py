import itertools

import pytest

from pbmod.errors import ArityError
from pbmod.tseitin import FALSE, TRUE, CnfBuilder, Gate, define_conjunction_root, define_gate


def models(clauses, variables):
    """All total assignments over ``variables`` satisfying ``clauses``."""
    out = []
    for bits in itertools.product((False, True), repeat=len(variables)):
        a = dict(zip(variables, bits))
        if all(any(a[abs(l)] == (l > 0) for l in c) for c in clauses):
            out.append(a)
    return out


def test_or_clauses():
    b = CnfBuilder(3)
    z = define_gate(b, Gate.OR, [1, 2])
    assert z == 3
    assert b.clauses.clauses == [(-3, 1, 2), (3, -1), (3, -2)]


def test_and_clauses():
    b = CnfBuilder(3)
    z = b.and_(1, 2)
    assert b.clauses.clauses == [(z, -1, -2), (-z, 1), (-z, 2)]


def test_not_clauses():
    b = CnfBuilder(2)
    z = define_gate(b, Gate.NOT, [1])
    assert b.clauses.clauses == [(-z, -1), (z, 1)]


def test_unary_gate_is_identity():
    b = CnfBuilder(2)
    assert b.and_(1) == 1 and b.or_(-1) == -1
    assert len(b.clauses) == 0


def test_arity_errors():
    b = CnfBuilder(3)
    with pytest.raises(ArityError):
        define_gate(b, Gate.NOT, [1, 2])
    with pytest.raises(ArityError):
        define_gate(b, Gate.AND, [])


def test_constant_folding():
    b = CnfBuilder(3)
    assert b.and_(1, FALSE) == FALSE
    assert b.and_(1, TRUE) == 1
    assert b.or_(1, TRUE) == TRUE
    assert b.or_(1, -1) == TRUE
    assert b.and_(1, -1) == FALSE
    assert define_gate(b, Gate.NOT, [TRUE]) == FALSE
    assert len(b.clauses) == 0


@pytest.mark.parametrize("kind", [Gate.AND, Gate.OR])
@pytest.mark.parametrize("arity", [2, 3, 4, 5])
def test_gate_function_exhaustive(kind, arity):
    b = CnfBuilder(arity + 1)
    ins = list(range(1, arity + 1))
    z = define_gate(b, kind, ins)
    ms = models(b.clauses.clauses, ins + [z])
    assert len(ms) == 2 ** arity
    for m in ms:
        vals = [m[i] for i in ins]
        assert m[z] == (all(vals) if kind is Gate.AND else any(vals))


def test_fresh_variables_never_reused():
    b = CnfBuilder(5)
    seen = {b.and_(1, 2), b.and_(1, 2), b.or_(3, 4), b.new_var()}
    assert len(seen) == 4 and min(seen) == 5


def test_conjunction_root():
    b = CnfBuilder(4)
    v = define_conjunction_root(b, [1, 2, 3])
    assert len(b.clauses) == 4
    assert (v, -1, -2, -3) in b.clauses.clauses
    assert define_conjunction_root(b, [7]) == 7
    assert define_conjunction_root(b, []) == TRUE
    assert define_conjunction_root(b, [1, FALSE]) == FALSE


def test_true_var_materialized_once():
    b = CnfBuilder(2)
    b.add_clause([1, FALSE])
    assert b._true_var is None
    b.add_clause([FALSE])
    t = b.true_var
    assert b.clauses.clauses == [(1,), (t,), (-t,)]
    assert b.materialize(TRUE) == t and b.materialize(FALSE) == -t


def test_tautologies_dropped_and_duplicates_merged():
    b = CnfBuilder(3)
    b.add_clause([1, -1, 2])
    b.add_clause([1, 1, 2])
    assert b.clauses.clauses == [(1, 2)]


def test_translation_partition():
    b = CnfBuilder(3)
    z = b.or_(1, 2)
    t = b.translation(z, [1, 2])
    assert t.input_vars == {1, 2} and t.aux_vars == {3}
    assert t.num_vars == 3 and t.stats() == {"vars": 3, "clauses": 3, "literals": 7}
