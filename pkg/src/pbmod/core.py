"""Constraint types, assignments and normalization to the equality form.

Literals are signed DIMACS integers: ``v`` is the positive occurrence of
variable ``v`` and ``-v`` its negation.  Assignments are plain dicts mapping
variable ids to booleans; an absent key means "unassigned".
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from pbmod.errors import BadModulus, DuplicateVariable, UnassignedVariable

Literal = int
Assignment = Dict[int, bool]
Term = Tuple[int, Literal]


def lit(variable: int, polarity: bool = True) -> Literal:
    if variable < 1:
        raise ValueError("variable ids start at 1, got %d" % variable)
    return variable if polarity else -variable


def var(literal: Literal) -> int:
    return abs(literal)


def lit_value(literal: Literal, assignment: Mapping[int, bool]) -> Optional[bool]:
    """Truth value of ``literal`` under ``assignment`` or None if unassigned."""
    value = assignment.get(abs(literal))
    if value is None:
        return None
    return value if literal > 0 else not value


class Op(enum.Enum):
    LT = "<"
    LE = "<="
    EQ = "="
    GE = ">="
    GT = ">"

    def holds(self, lhs: int, rhs: int) -> bool:
        if self is Op.LT:
            return lhs < rhs
        if self is Op.LE:
            return lhs <= rhs
        if self is Op.EQ:
            return lhs == rhs
        if self is Op.GE:
            return lhs >= rhs
        return lhs > rhs

    def negated(self) -> "Op":
        """Operator of the complementary constraint (EQ has none)."""
        return _NEGATION[self]


_NEGATION = {Op.LT: Op.GE, Op.GE: Op.LT, Op.LE: Op.GT, Op.GT: Op.LE}


class Status(enum.Enum):
    PROPER = "Proper"
    CONST_TRUE = "ConstTrue"
    CONST_FALSE = "ConstFalse"


def _check_terms(terms: Sequence[Term]) -> Tuple[Term, ...]:
    seen = set()
    out = []
    for coef, literal in terms:
        coef = int(coef)
        literal = int(literal)
        if literal == 0:
            raise ValueError("literal 0 is not a valid literal")
        if abs(literal) in seen:
            raise DuplicateVariable("variable %d occurs twice in one constraint" % abs(literal))
        seen.add(abs(literal))
        out.append((coef, literal))
    return tuple(out)


def _lhs(terms: Iterable[Term], assignment: Mapping[int, bool]) -> int:
    total = 0
    for coef, literal in terms:
        value = lit_value(literal, assignment)
        if value is None:
            raise UnassignedVariable("variable %d is unassigned" % abs(literal))
        if value:
            total += coef
    return total


@dataclass(frozen=True)
class PBConstraint:
    """``sum(a_i * l_i) op bound`` with integer coefficients."""

    terms: Tuple[Term, ...]
    op: Op
    bound: int

    def __init__(self, terms: Sequence[Term], op, bound: int):
        object.__setattr__(self, "terms", _check_terms(terms))
        object.__setattr__(self, "op", op if isinstance(op, Op) else Op(op))
        object.__setattr__(self, "bound", int(bound))

    @property
    def variables(self) -> Tuple[int, ...]:
        return tuple(abs(l) for _, l in self.terms)

    def __str__(self) -> str:
        return "%s %s %d" % (_format_terms(self.terms), self.op.value, self.bound)


@dataclass(frozen=True)
class NormalizedPB:
    """Positive-coefficient equality ``sum(a_i * l_i) = bound``.

    ``slack_vars`` lists the variables introduced while normalizing; they
    also occur among ``terms``.  When ``status`` is not PROPER the terms are
    empty and the constraint is a constant.
    """

    terms: Tuple[Term, ...]
    bound: int
    slack_vars: Tuple[int, ...] = ()
    status: Status = Status.PROPER

    @property
    def total(self) -> int:
        """S, the sum of all coefficients."""
        return sum(c for c, _ in self.terms)

    @property
    def variables(self) -> Tuple[int, ...]:
        return tuple(abs(l) for _, l in self.terms)

    def as_pb(self) -> PBConstraint:
        if self.status is Status.CONST_TRUE:
            return PBConstraint((), Op.EQ, 0)
        if self.status is Status.CONST_FALSE:
            return PBConstraint((), Op.EQ, 1)
        return PBConstraint(self.terms, Op.EQ, self.bound)

    def __str__(self) -> str:
        if self.status is not Status.PROPER:
            return self.status.value
        return "%s = %d" % (_format_terms(self.terms), self.bound)


@dataclass(frozen=True)
class PBModConstraint:
    """``sum(a_i * l_i) == bound (mod modulus)`` with reduced coefficients."""

    terms: Tuple[Term, ...]
    bound: int
    modulus: int

    def __init__(self, terms: Sequence[Term], bound: int, modulus: int):
        modulus = int(modulus)
        if modulus < 2:
            raise BadModulus("modulus must be at least 2, got %d" % modulus)
        reduced = [(int(c) % modulus, l) for c, l in terms]
        object.__setattr__(self, "terms", _check_terms(reduced))
        object.__setattr__(self, "bound", int(bound) % modulus)
        object.__setattr__(self, "modulus", modulus)

    @property
    def variables(self) -> Tuple[int, ...]:
        return tuple(abs(l) for _, l in self.terms)

    def __str__(self) -> str:
        return "%s = %d (mod %d)" % (_format_terms(self.terms), self.bound, self.modulus)


def _format_terms(terms) -> str:
    if not terms:
        return "0"
    parts = []
    for c, l in terms:
        name = ("x%d" % l) if l > 0 else ("~x%d" % -l)
        parts.append("%+d %s" % (c, name))
    return " ".join(parts)


def evaluate_pb(q, assignment: Mapping[int, bool]) -> bool:
    """Truth of a PBConstraint (or NormalizedPB) under a total assignment."""
    if isinstance(q, NormalizedPB):
        if q.status is Status.CONST_TRUE:
            return True
        if q.status is Status.CONST_FALSE:
            return False
        return _lhs(q.terms, assignment) == q.bound
    return q.op.holds(_lhs(q.terms, assignment), q.bound)


def evaluate_pbmod(qm: PBModConstraint, assignment: Mapping[int, bool]) -> bool:
    return _lhs(qm.terms, assignment) % qm.modulus == qm.bound


def evaluate(q, assignment: Mapping[int, bool]) -> bool:
    if isinstance(q, PBModConstraint):
        return evaluate_pbmod(q, assignment)
    return evaluate_pb(q, assignment)


def _flip_negative(terms: Sequence[Term], bound: int):
    """Rewrite a*l with a < 0 as |a|*~l, moving |a| onto the right-hand side.

    Zero coefficients are dropped.
    """
    out = []
    for coef, literal in terms:
        if coef < 0:
            out.append((-coef, -literal))
            bound -= coef
        elif coef > 0:
            out.append((coef, literal))
    return out, bound


def normalize(q: PBConstraint, slack_start: Optional[int] = None) -> NormalizedPB:
    """Rewrite ``q`` as an equivalent positive-coefficient equality.

    Slack variables, when needed, are numbered from ``slack_start``
    (default: one past the largest variable of ``q``).
    """
    terms = list(q.terms)
    bound = q.bound
    if q.op is Op.EQ:
        pos, bound = _flip_negative(terms, bound)
        total = sum(c for c, _ in pos)
        if bound < 0 or bound > total:
            return NormalizedPB((), 0, (), Status.CONST_FALSE)
        return NormalizedPB(tuple(pos), bound)

    # strict "<" form
    if q.op is Op.LE:
        bound += 1
    elif q.op is Op.GE:
        terms = [(-c, l) for c, l in terms]
        bound = 1 - bound
    elif q.op is Op.GT:
        terms = [(-c, l) for c, l in terms]
        bound = -bound
    pos, bound = _flip_negative(terms, bound)
    total = sum(c for c, _ in pos)
    if bound <= 0:
        return NormalizedPB((), 0, (), Status.CONST_FALSE)
    if bound > total:
        return NormalizedPB((), 0, (), Status.CONST_TRUE)
    if bound == 1:
        return NormalizedPB(tuple(pos), 0)
    if slack_start is None:
        slack_start = max((abs(l) for _, l in q.terms), default=0) + 1
    width = bound.bit_length()  # floor(log2 b) + 1 bits
    slack = tuple(range(slack_start, slack_start + width))
    pos.extend((1 << i, y) for i, y in enumerate(slack))
    return NormalizedPB(tuple(pos), bound - 1, slack)


def restrict(assignment: Mapping[int, bool], variables: Iterable[int]) -> Assignment:
    return {v: assignment[v] for v in variables if v in assignment}
