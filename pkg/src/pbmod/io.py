"""OPB-style constraint parsing and DIMACS CNF output with a variable map."""

from __future__ import annotations

import json
import re
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from pbmod.core import Op, PBConstraint
from pbmod.errors import DuplicateVariable, ParseError
from pbmod.tseitin import Translation

_HEADER = re.compile(r"\*\s*#variable=\s*(\d+)\s+#constraint=\s*(\d+)")
_SPACE = re.compile(r"\s+")
_TERM = re.compile(r"([+-]?)(\d+)\s+(~?)x(\d+)(?![\w])")
_OP = re.compile(r">=|<=|=|>|<")
_INT = re.compile(r"[+-]?\d+")


def _skip(line: str, pos: int) -> int:
    m = _SPACE.match(line, pos)
    return m.end() if m else pos


def _parse_line(line: str, lineno: int) -> List[PBConstraint]:
    out = []
    pos = _skip(line, 0)
    while pos < len(line):
        terms: List[Tuple[int, int]] = []
        while True:
            m = _TERM.match(line, pos)
            if not m:
                break
            sign, coef, neg, index = m.groups()
            variable = int(index)
            if variable < 1:
                raise ParseError("variable names start at x1", lineno, m.start(4) + 1)
            value = -int(coef) if sign == "-" else int(coef)
            terms.append((value, -variable if neg else variable))
            pos = _skip(line, m.end())
        if not terms:
            raise ParseError("expected a term such as '+3 x1'", lineno, pos + 1)
        m = _OP.match(line, pos)
        if not m:
            raise ParseError("expected one of = >= <= > <", lineno, pos + 1)
        op = Op(m.group())
        pos = _skip(line, m.end())
        m = _INT.match(line, pos)
        if not m:
            raise ParseError("expected an integer right-hand side", lineno, pos + 1)
        bound = int(m.group())
        pos = _skip(line, m.end())
        if not line.startswith(";", pos):
            raise ParseError("expected ';'", lineno, pos + 1)
        pos = _skip(line, pos + 1)
        try:
            out.append(PBConstraint(terms, op, bound))
        except DuplicateVariable as exc:
            raise DuplicateVariable("line %d: %s" % (lineno, exc)) from None
    return out


def parse_opb(text: str) -> List[PBConstraint]:
    """Constraints of an OPB-style document, in file order.

    Variables are named x1, x2, ...; the constraint uses the number as its
    variable id.  A leading '~' negates the variable.
    """
    constraints: List[PBConstraint] = []
    header: Optional[Tuple[int, int, int]] = None
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("*"):
            m = _HEADER.match(stripped)
            if m and header is None and not constraints:
                header = (int(m.group(1)), int(m.group(2)), lineno)
            continue
        constraints.extend(_parse_line(line, lineno))
    if header is not None:
        nvars, ncons, lineno = header
        if ncons != len(constraints):
            raise ParseError("header announces %d constraints, found %d" % (ncons, len(constraints)), lineno)
        top = max((v for q in constraints for v in q.variables), default=0)
        if top > nvars:
            raise ParseError("header announces %d variables, found x%d" % (nvars, top), lineno)
    return constraints


def format_constraint(q: PBConstraint) -> str:
    parts = []
    for coef, literal in q.terms:
        name = "x%d" % literal if literal > 0 else "~x%d" % -literal
        parts.append("%+d %s" % (coef, name))
    return "%s %s %d ;" % (" ".join(parts), q.op.value, q.bound)


def format_opb(constraints: Sequence[PBConstraint]) -> str:
    """Canonical text; ``parse_opb(format_opb(cs)) == cs`` for non-empty constraints."""
    top = max((v for q in constraints for v in q.variables), default=0)
    lines = ["* #variable= %d #constraint= %d" % (top, len(constraints))]
    lines.extend(format_constraint(q) for q in constraints)
    return "\n".join(lines) + "\n"


# -- DIMACS ------------------------------------------------------------------

def var_map(t: Translation, names: Optional[Mapping[int, str]] = None) -> Dict:
    """Sidecar describing where source variables, stages and roots live."""
    if names is None:
        names = {v: "x%d" % v for v in sorted(t.input_vars)}
    return {
        "source_vars": {names[v]: v for v in sorted(names)},
        "aux_ranges": [{"stage": name, "first": lo, "last": hi}
                       for name, lo, hi in sorted(reversed(t.stages), key=lambda s: (s[1], -s[2]))],
        "root": {"index": abs(t.root), "polarity": t.root > 0},
        "modulus_components": [
            {"modulus": m, "root": {"index": abs(r), "polarity": r > 0}} for m, r in t.components
        ],
    }


def write_dimacs(t: Translation, assert_root: bool = False,
                 names: Optional[Mapping[int, str]] = None) -> Tuple[bytes, Dict]:
    clauses = list(t.clauses)
    if assert_root:
        clauses.append((t.root,))
    lines = ["p cnf %d %d" % (t.num_vars, len(clauses))]
    for clause in clauses:
        lines.append(" ".join(str(l) for l in clause) + " 0")
    return ("\n".join(lines) + "\n").encode("ascii"), var_map(t, names)


def dump_var_map(vmap: Dict) -> bytes:
    return (json.dumps(vmap, indent=2) + "\n").encode("utf-8")


def parse_dimacs(data) -> Tuple[int, List[Tuple[int, ...]]]:
    """(num_vars, clauses) from DIMACS text; header counts are checked."""
    if isinstance(data, bytes):
        data = data.decode("ascii")
    header = None
    clauses: List[Tuple[int, ...]] = []
    current: List[int] = []
    for lineno, line in enumerate(data.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            fields = line.split()
            if len(fields) != 4 or fields[1] != "cnf" or header is not None:
                raise ParseError("bad problem line", lineno)
            header = (int(fields[2]), int(fields[3]))
            continue
        if header is None:
            raise ParseError("clause before the problem line", lineno)
        for token in line.split():
            try:
                l = int(token)
            except ValueError:
                raise ParseError("not a literal: %r" % token, lineno) from None
            if l == 0:
                clauses.append(tuple(current))
                current = []
            else:
                if abs(l) > header[0]:
                    raise ParseError("literal %d exceeds the declared variables" % l, lineno)
                current.append(l)
    if header is None:
        raise ParseError("missing problem line")
    if current:
        raise ParseError("last clause is not terminated by 0")
    if len(clauses) != header[1]:
        raise ParseError("header declares %d clauses, found %d" % (header[1], len(clauses)))
    return header[0], clauses
