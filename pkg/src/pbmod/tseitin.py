"""CNF construction: fresh variables, constant folding and gate definitions."""

from __future__ import annotations

import enum
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from pbmod.errors import ArityError

# Constant sentinels used while building.  They never reach emitted clauses:
# add_clause folds them away and materialize() maps them onto the reserved
# variable T (allocated on first use, asserted by the unit clause {T}).
TRUE = 1 << 62
FALSE = -TRUE

Clause = Tuple[int, ...]


def is_const(literal: int) -> bool:
    return literal == TRUE or literal == FALSE


class Gate(enum.Enum):
    AND = "and"
    OR = "or"
    NOT = "not"


@dataclass(frozen=True)
class Translation:
    """A pair <root, clauses> plus the input/auxiliary variable partition."""

    root: int
    clauses: Tuple[Clause, ...]
    input_vars: FrozenSet[int]
    aux_vars: FrozenSet[int]
    num_vars: int
    components: Tuple[Tuple[int, int], ...] = ()  # (modulus, component root)
    stages: Tuple[Tuple[str, int, int], ...] = ()  # (name, first var, last var)

    @property
    def num_literals(self) -> int:
        return sum(len(c) for c in self.clauses)

    def stats(self) -> Dict[str, int]:
        return {
            "vars": self.num_vars,
            "clauses": len(self.clauses),
            "literals": self.num_literals,
        }


class ClauseSet:
    """Ordered clause storage; tautologies and duplicate literals are removed."""

    def __init__(self):
        self.clauses: List[Clause] = []
        self.max_var = 0

    def add(self, literals: Iterable[int]) -> bool:
        seen = []
        for l in literals:
            if -l in seen:
                return False
            if l not in seen:
                seen.append(l)
        clause = tuple(seen)
        for l in clause:
            if abs(l) > self.max_var:
                self.max_var = abs(l)
        self.clauses.append(clause)
        return True

    def __len__(self):
        return len(self.clauses)

    def __iter__(self):
        return iter(self.clauses)

    def __getitem__(self, i):
        return self.clauses[i]


class CnfBuilder:
    """Single-owner CNF under construction.

    ``first_var`` is the first id the builder may allocate; ids below it are
    reserved for input variables.
    """

    def __init__(self, first_var: int = 1):
        if first_var < 1:
            raise ValueError("first_var must be positive")
        self.next_var = first_var
        self.first_var = first_var
        self.clauses = ClauseSet()
        self._true_var: Optional[int] = None
        self.stages: List[Tuple[str, int, int]] = []

    # -- variables -----------------------------------------------------
    def new_var(self) -> int:
        v = self.next_var
        self.next_var += 1
        return v

    def new_vars(self, count: int) -> List[int]:
        return [self.new_var() for _ in range(count)]

    def reserve_through(self, variable: int) -> None:
        """Make sure ``variable`` (and everything below) is never allocated."""
        if variable >= self.next_var:
            self.next_var = variable + 1

    @property
    def num_vars(self) -> int:
        return max(self.next_var - 1, self.clauses.max_var)

    @contextmanager
    def stage(self, name: str):
        start = self.next_var
        yield
        if self.next_var > start:
            self.stages.append((name, start, self.next_var - 1))

    # -- constants -----------------------------------------------------
    @property
    def true_var(self) -> int:
        if self._true_var is None:
            self._true_var = self.new_var()
            self.clauses.add((self._true_var,))
        return self._true_var

    def materialize(self, literal: int) -> int:
        """Replace a constant sentinel by the reserved T variable."""
        if literal == TRUE:
            return self.true_var
        if literal == FALSE:
            return -self.true_var
        return literal

    def const_value(self, literal: int) -> Optional[bool]:
        if literal == TRUE:
            return True
        if literal == FALSE:
            return False
        if self._true_var is not None and abs(literal) == self._true_var:
            return literal > 0
        return None

    # -- clauses -------------------------------------------------------
    def add_clause(self, literals: Iterable[int]) -> None:
        out = []
        for l in literals:
            value = self.const_value(l)
            if value is True:
                return
            if value is None:
                out.append(l)
        if not out:
            # falsified by constants: keep the contradiction explicit
            out = [-self.true_var]
        self.clauses.add(out)

    # -- gates ---------------------------------------------------------
    def define_gate(self, kind: Gate, inputs: Sequence[int]) -> int:
        if kind is Gate.NOT:
            if len(inputs) != 1:
                raise ArityError("NOT takes exactly one input")
            x = inputs[0]
            value = self.const_value(x)
            if value is not None:
                return FALSE if value else TRUE
            z = self.new_var()
            self.add_clause((-z, -x))
            self.add_clause((z, x))
            return z
        if len(inputs) < 1:
            raise ArityError("%s takes at least one input" % kind.name)
        if kind is Gate.AND:
            absorbing, neutral = FALSE, TRUE
        else:
            absorbing, neutral = TRUE, FALSE
        ins: List[int] = []
        for x in inputs:
            value = self.const_value(x)
            if value is not None:
                if (TRUE if value else FALSE) == absorbing:
                    return absorbing
                continue
            if -x in ins:
                return absorbing
            if x not in ins:
                ins.append(x)
        if not ins:
            return neutral
        if len(ins) == 1:
            return ins[0]
        z = self.new_var()
        if kind is Gate.OR:
            self.add_clause([-z] + ins)
            for x in ins:
                self.add_clause((z, -x))
        else:
            self.add_clause([z] + [-x for x in ins])
            for x in ins:
                self.add_clause((-z, x))
        return z

    def and_(self, *inputs: int) -> int:
        return self.define_gate(Gate.AND, inputs)

    def or_(self, *inputs: int) -> int:
        return self.define_gate(Gate.OR, inputs)

    def xor(self, a: int, b: int) -> int:
        return self.or_(self.and_(a, -b), self.and_(-a, b))

    def define_conjunction_root(self, parts: Sequence[int]) -> int:
        """v <=> AND(parts); empty parts give TRUE, one part is returned as is."""
        ins = []
        for p in parts:
            value = self.const_value(p)
            if value is False:
                return FALSE
            if value is None and p not in ins:
                ins.append(p)
        if not ins:
            return TRUE
        if len(ins) == 1:
            return ins[0]
        v = self.new_var()
        for p in ins:
            self.add_clause((-v, p))
        self.add_clause([v] + [-p for p in ins])
        return v

    def at_most_one(self, literals: Sequence[int]) -> None:
        for i in range(len(literals)):
            for j in range(i + 1, len(literals)):
                self.add_clause((-literals[i], -literals[j]))

    def at_least_one(self, literals: Sequence[int]) -> None:
        self.add_clause(literals)

    # -- results -------------------------------------------------------
    def translation(self, root: int, input_vars: Iterable[int], components=()) -> Translation:
        root = self.materialize(root)
        inputs = frozenset(input_vars)
        n = max(self.num_vars, max(inputs, default=0), abs(root))
        aux = frozenset(v for v in range(1, n + 1) if v not in inputs)
        return Translation(
            root=root,
            clauses=tuple(self.clauses.clauses),
            input_vars=inputs,
            aux_vars=aux,
            num_vars=n,
            components=tuple((m, self.materialize(r)) for m, r in components),
            stages=tuple(self.stages),
        )


def define_gate(builder: CnfBuilder, kind: Gate, inputs: Sequence[int]) -> int:
    return builder.define_gate(kind, inputs)


def define_conjunction_root(builder: CnfBuilder, parts: Sequence[int]) -> int:
    return builder.define_conjunction_root(parts)
