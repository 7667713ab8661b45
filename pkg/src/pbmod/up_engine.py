"""Unit propagation, a small DPLL solver and the translation checkers.

The solver is verification grade: chronological backtracking, no learning,
branching on the lowest unassigned variable with the false phase first.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from pbmod.core import (
    Assignment,
    NormalizedPB,
    Op,
    PBConstraint,
    PBModConstraint,
    Status,
    evaluate,
)
from pbmod.errors import InconsistentAssumptions, ResourceLimit, TooManyVariables
from pbmod.kernel import LIMIT, SAT, Kernel
from pbmod.tseitin import Translation

DEFAULT_BUDGET = 1_000_000
MAX_ENUMERATION_VARS = 25

Constraint = Union[PBConstraint, PBModConstraint, NormalizedPB]


class Outcome(enum.Enum):
    CONFLICT = "Conflict"
    FIXPOINT = "Fixpoint"


@dataclass(frozen=True)
class PropagationResult:
    outcome: Outcome
    implied: Assignment
    conflict_clause: Optional[int] = None

    @property
    def conflict(self) -> bool:
        return self.outcome is Outcome.CONFLICT


@dataclass(frozen=True)
class SolveResult:
    sat: bool
    model: Optional[Assignment] = None


def _as_literals(assumptions) -> List[int]:
    """Accepts a {var: bool} mapping or an iterable of signed literals."""
    if assumptions is None:
        return []
    if isinstance(assumptions, Mapping):
        return [v if value else -v for v, value in assumptions.items()]
    lits = [int(l) for l in assumptions]
    seen = set(lits)
    for l in lits:
        if -l in seen:
            raise InconsistentAssumptions("variable %d assumed both ways" % abs(l))
    return lits


def _max_var(clauses: Iterable[Sequence[int]], lits: Iterable[int]) -> int:
    top = max((abs(l) for l in lits), default=0)
    for c in clauses:
        for l in c:
            if abs(l) > top:
                top = abs(l)
    return top


class Solver:
    """Reusable propagation/solving state over a fixed clause list."""

    def __init__(self, clauses: Sequence[Sequence[int]], num_vars: Optional[int] = None):
        self.clauses = [tuple(c) for c in clauses]
        if num_vars is None:
            num_vars = _max_var(self.clauses, ())
        self.num_vars = num_vars
        self._kernel = Kernel(self.clauses, num_vars)
        # kernel clause index -> position in self.clauses
        self._long = [i for i, c in enumerate(self.clauses) if len(c) > 1]

    def propagate(self, assumptions=None) -> PropagationResult:
        return self._propagate(_as_literals(assumptions))

    def _propagate(self, lits: List[int]) -> PropagationResult:
        # contradictory literals are allowed here and yield a conflict
        conflict, trail = self._kernel.propagate(lits)
        implied = {abs(l): l > 0 for l in trail}
        if conflict == -1:
            return PropagationResult(Outcome.FIXPOINT, implied)
        index = self._long[conflict] if conflict >= 0 else self._falsified_short(lits)
        return PropagationResult(Outcome.CONFLICT, implied, index)

    def _falsified_short(self, lits: List[int]) -> Optional[int]:
        forced = set(lits)
        for i, c in enumerate(self.clauses):
            if not c:
                return i
            if len(c) == 1:
                if -c[0] in forced:
                    return i
                forced.add(c[0])
        return None

    def satisfiable(self, assumptions=None, max_decisions: int = DEFAULT_BUDGET) -> bool:
        return self._satisfiable(_as_literals(assumptions), max_decisions)

    def _satisfiable(self, lits: List[int], max_decisions: int) -> bool:
        status = self._kernel.check(lits, max_decisions)
        if status == LIMIT:
            raise ResourceLimit("decision budget of %d exhausted" % max_decisions)
        return status == SAT

    def solve(self, assumptions=None, max_decisions: int = DEFAULT_BUDGET) -> SolveResult:
        status, model = self._kernel.solve(_as_literals(assumptions), max_decisions)
        if status == LIMIT:
            raise ResourceLimit("decision budget of %d exhausted" % max_decisions)
        if status != SAT:
            return SolveResult(False)
        return SolveResult(True, {abs(l): l > 0 for l in model})


def unit_propagate(clauses: Sequence[Sequence[int]], assumptions=None) -> PropagationResult:
    """Least fixpoint of the unit rule, or a conflict."""
    lits = _as_literals(assumptions)
    return Solver(clauses, _max_var(clauses, lits)).propagate(lits)


def solve(clauses: Sequence[Sequence[int]], assumptions=None,
          max_decisions: int = DEFAULT_BUDGET) -> SolveResult:
    lits = _as_literals(assumptions)
    return Solver(clauses, _max_var(clauses, lits)).solve(lits, max_decisions)


# -- brute force -------------------------------------------------------------

def constraint_variables(q: Constraint) -> Tuple[int, ...]:
    return tuple(sorted(q.variables))


def enumerate_pb_solutions(q: Constraint) -> List[Assignment]:
    """All satisfying total assignments over vars(q), lexicographic (F < T)."""
    variables = constraint_variables(q)
    if len(variables) > MAX_ENUMERATION_VARS:
        raise TooManyVariables("%d variables exceed the enumeration limit of %d"
                               % (len(variables), MAX_ENUMERATION_VARS))
    out = []
    for values in itertools.product((False, True), repeat=len(variables)):
        a = dict(zip(variables, values))
        if evaluate(q, a):
            out.append(a)
    return out


def truth_table(q: Constraint, variables: Sequence[int]) -> np.ndarray:
    """Boolean vector over the 2**n assignments; bit i of the row index is variables[i]."""
    n = len(variables)
    rows = np.arange(1 << n, dtype=np.int64)
    position = {v: i for i, v in enumerate(variables)}
    if isinstance(q, NormalizedPB) and q.status is not Status.PROPER:
        return np.full(1 << n, q.status is Status.CONST_TRUE)
    coefs = [c for c, _ in q.terms]
    wide = sum(abs(c) for c in coefs) >= 1 << 62
    lhs = np.zeros(1 << n, dtype=object if wide else np.int64)
    for c, l in q.terms:
        bit = (rows >> position[abs(l)]) & 1
        if l < 0:
            bit = 1 - bit
        lhs = lhs + bit.astype(lhs.dtype) * c
    if isinstance(q, PBModConstraint):
        return np.asarray(lhs % q.modulus == q.bound, dtype=bool)
    if isinstance(q, NormalizedPB):
        return np.asarray(lhs == q.bound, dtype=bool)
    op = q.op
    b = q.bound
    if op is Op.LT:
        out = lhs < b
    elif op is Op.LE:
        out = lhs <= b
    elif op is Op.EQ:
        out = lhs == b
    elif op is Op.GE:
        out = lhs >= b
    else:
        out = lhs > b
    return np.asarray(out, dtype=bool)


# -- validity ----------------------------------------------------------------

@dataclass(frozen=True)
class ValidityResult:
    passed: bool
    reason: str = ""
    witness: Optional[Assignment] = None

    def __bool__(self) -> bool:
        return self.passed


def check_valid_translation(q: Constraint, t: Translation, max_inputs: int = 20,
                            max_decisions: int = DEFAULT_BUDGET) -> ValidityResult:
    """Machine check that ``<t.root, t.clauses>`` is a valid translation of ``q``.

    The clauses must be satisfiable and, for every total input assignment,
    extending it with the root is satisfiable exactly when ``q`` holds and
    extending it with the negated root exactly when ``q`` fails.
    """
    variables = tuple(sorted(set(q.variables) | set(t.input_vars)))
    if len(variables) > max_inputs:
        raise ResourceLimit("%d input variables exceed the limit of %d" % (len(variables), max_inputs))
    solver = Solver(t.clauses, max(t.num_vars, abs(t.root), max(variables, default=0)))
    if not solver.satisfiable((), max_decisions):
        return ValidityResult(False, "clauses are unsatisfiable")
    truth = truth_table(q, variables)
    v = t.root
    for row, holds in enumerate(truth.tolist()):
        lits = [x if (row >> i) & 1 else -x for i, x in enumerate(variables)]
        with_root = solver._satisfiable(lits + [v], max_decisions)
        without_root = solver._satisfiable(lits + [-v], max_decisions)
        if with_root != holds or without_root == holds:
            witness = {abs(l): l > 0 for l in lits}
            if with_root != holds:
                reason = "root can%s be true" % ("not" if holds else "")
            else:
                reason = "root can%s be false" % ("" if holds else "not")
            return ValidityResult(False, "%s under the witness (constraint %s)"
                                  % (reason, "holds" if holds else "fails"), witness)
    return ValidityResult(True)


# -- unit propagation strength -----------------------------------------------

@dataclass(frozen=True)
class Witness:
    """One failing partial assignment.

    ``kind`` is "detect" (no extension but UP found no conflict), "infer"
    (``literal`` is forced but UP missed it) or "unsound" (UP derived
    ``literal`` or a conflict that the constraint does not force).
    """

    partial: Assignment
    kind: str
    literal: Optional[int]
    up_conflict: bool


@dataclass
class ArcReport:
    up_detectable: bool = True
    up_inferable: bool = True
    sound: bool = True
    # the same properties restricted to the empty partial assignment
    empty_detectable: bool = True
    empty_inferable: bool = True
    cases: int = 0
    exhaustive: bool = True
    witnesses: List[Witness] = field(default_factory=list)

    @property
    def arc_consistent(self) -> bool:
        return self.up_detectable and self.up_inferable


def _partials(variables: Sequence[int], exhaustive: bool, samples: int, seed: int):
    n = len(variables)
    if exhaustive:
        for choice in itertools.product((None, False, True), repeat=n):
            yield {v: c for v, c in zip(variables, choice) if c is not None}
        return
    yield {}
    rng = random.Random(seed)
    for _ in range(samples - 1):
        p = {}
        for v in variables:
            c = rng.randrange(3)
            if c:
                p[v] = c == 2
        yield p


def check_arc_consistency(q: Constraint, t: Translation, max_inputs: int = 16,
                          exhaustive_upto: int = 10, samples: int = 10_000, seed: int = 0,
                          max_witnesses: int = 50) -> ArcReport:
    """Compares UP on ``t`` (root asserted) with the ground truth of ``q``.

    Every partial input assignment is checked up to ``exhaustive_upto``
    variables; above that a fixed-seed sample is drawn.  The empty partial
    assignment is always included and its verdict is reported separately.
    """
    variables = tuple(sorted(set(q.variables) | set(t.input_vars)))
    n = len(variables)
    if n > max_inputs:
        raise ResourceLimit("%d input variables exceed the limit of %d" % (n, max_inputs))
    solutions = np.flatnonzero(truth_table(q, variables)).astype(np.int64)
    solver = Solver(t.clauses, max(t.num_vars, abs(t.root), max(variables, default=0)))
    report = ArcReport(exhaustive=n <= exhaustive_upto)

    def fail(partial, kind, literal, conflict):
        if len(report.witnesses) < max_witnesses:
            report.witnesses.append(Witness(dict(partial), kind, literal, conflict))

    for partial in _partials(variables, report.exhaustive, samples, seed):
        report.cases += 1
        mask = value = 0
        for i, v in enumerate(variables):
            if v in partial:
                mask |= 1 << i
                if partial[v]:
                    value |= 1 << i
        ext = solutions[(solutions & mask) == value]
        result = solver._propagate([v if b else -v for v, b in partial.items()] + [t.root])
        empty = not partial
        if ext.size == 0:
            if not result.conflict:
                report.up_detectable = False
                if empty:
                    report.empty_detectable = False
                fail(partial, "detect", None, False)
            continue
        if result.conflict:
            report.sound = False
            fail(partial, "unsound", None, True)
            continue
        ones = int(np.bitwise_and.reduce(ext))
        anyone = int(np.bitwise_or.reduce(ext))
        for i, v in enumerate(variables):
            if (mask >> i) & 1:
                continue
            forced = None
            if (ones >> i) & 1:
                forced = True
            elif not (anyone >> i) & 1:
                forced = False
            derived = result.implied.get(v)
            if forced is not None and derived != forced:
                report.up_inferable = False
                if empty:
                    report.empty_inferable = False
                fail(partial, "infer", v if forced else -v, False)
            elif derived is not None and forced != derived:
                report.sound = False
                fail(partial, "unsound", v if derived else -v, False)
    return report
