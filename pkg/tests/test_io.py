import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from pbmod.core import Op, PBConstraint, evaluate_pb
from pbmod.encoding import EncoderSpec, translate
from pbmod.errors import DuplicateVariable, ParseError
from pbmod.io import dump_var_map, format_opb, parse_dimacs, parse_opb, var_map, write_dimacs
from pbmod.tseitin import Translation


def test_parse_q1():
    assert parse_opb("+3 x1 +3 x2 +4 x3 = 7 ;") == [PBConstraint([(3, 1), (3, 2), (4, 3)], Op.EQ, 7)]


def test_parse_negation_and_ge():
    (q,) = parse_opb("-2 x1 +4 ~x2 >= 1 ;")
    assert q == PBConstraint([(-2, 1), (4, -2)], Op.GE, 1)
    sols = {bits for bits in itertools.product((False, True), repeat=2)
            if evaluate_pb(q, dict(zip((1, 2), bits)))}
    assert sols == {(False, False), (True, False)}


def test_comments_blank_lines_and_header():
    text = "* #variable= 3 #constraint= 2\n* comment\n\n+1 x1 +1 x2 <= 1 ;\n+1 x3 > 0 ; \n"
    qs = parse_opb(text)
    assert [q.op for q in qs] == [Op.LE, Op.GT]
    assert parse_opb("* comment") == []


def test_two_constraints_one_line():
    assert len(parse_opb("+1 x1 = 1 ; +1 x2 = 0 ;")) == 2


@pytest.mark.parametrize("text,line,col", [
    ("+1 x1 +2 x2 = 3", 1, 16),
    ("+1 x1 == 3 ;", 1, 8),
    ("\n+1 y1 = 1 ;", 2, 1),
    ("+1 x0 = 0 ;", 1, 5),
    ("+1 x1 = ;", 1, 9),
])
def test_parse_errors_have_positions(text, line, col):
    with pytest.raises(ParseError) as exc:
        parse_opb(text)
    assert exc.value.line == line and exc.value.column == col


def test_header_mismatch():
    with pytest.raises(ParseError):
        parse_opb("* #variable= 1 #constraint= 2\n+1 x1 = 1 ;\n")
    with pytest.raises(ParseError):
        parse_opb("* #variable= 1 #constraint= 1\n+1 x2 = 1 ;\n")


def test_duplicate_variable():
    with pytest.raises(DuplicateVariable):
        parse_opb("+1 x1 +1 ~x1 = 1 ;")


term_st = st.tuples(st.integers(-50, 50), st.booleans())


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.lists(term_st, min_size=1, max_size=6),
                          st.sampled_from(list(Op)), st.integers(-100, 100)), max_size=4))
def test_opb_round_trip(rows):
    cs = [PBConstraint([(a, i + 1 if pos else -(i + 1)) for i, (a, pos) in enumerate(terms)], op, b)
          for terms, op, b in rows]
    assert parse_opb(format_opb(cs)) == cs


def toy():
    return Translation(3, ((1, 2), (-3, 1)), frozenset({1, 2}), frozenset({3}), 3)


def test_dimacs_header():
    data, _ = write_dimacs(toy())
    assert data.splitlines()[0] == b"p cnf 3 2"
    data, _ = write_dimacs(toy(), assert_root=True)
    lines = data.splitlines()
    assert lines[0] == b"p cnf 3 3" and lines[-1] == b"3 0"


def test_dimacs_round_trip_example1():
    q = PBConstraint([(1, 1), (2, 2), (3, 3), (4, 4), (5, 5)], Op.EQ, 7)
    t = translate(q, EncoderSpec("modular-dp"))
    data, vmap = write_dimacs(t)
    n, clauses = parse_dimacs(data)
    assert n == t.num_vars and sorted(clauses) == sorted(t.clauses)
    assert vmap["source_vars"] == {"x%d" % i: i for i in range(1, 6)}
    assert [c["modulus"] for c in vmap["modulus_components"]] == [2, 3, 5]
    assert json.loads(dump_var_map(vmap)) == vmap


def test_var_map_ranges_cover_aux():
    q = PBConstraint([(3, 1), (-2, 2)], Op.GE, 1)
    t = translate(q, EncoderSpec("modular-dc"))
    vm = var_map(t)
    names = [r["stage"] for r in vm["aux_ranges"]]
    assert names[:2] == ["slack", "encoding"] and "complement" in names
    covered = set()
    for r in vm["aux_ranges"]:
        assert r["first"] <= r["last"]
        covered.update(range(r["first"], r["last"] + 1))
    assert covered <= set(t.aux_vars)
    assert vm["root"] == {"index": abs(t.root), "polarity": t.root > 0}


@pytest.mark.parametrize("text", [
    "1 2 0\n", "p cnf 2 1\n1 3 0\n", "p cnf 2 2\n1 2 0\n", "p cnf 2 1\n1 2\n", "p cnf 2 1\n1 a 0\n",
    "p cnf 2 1\np cnf 2 1\n1 0\n",
])
def test_dimacs_rejects(text):
    with pytest.raises(ParseError):
        parse_dimacs(text)
