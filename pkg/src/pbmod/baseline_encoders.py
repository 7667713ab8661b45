"""Whole-constraint encoders for a NormalizedPB: BDD, binary adders, sorters."""

from __future__ import annotations

from typing import Dict, List, Tuple

from pbmod.core import NormalizedPB, Status
from pbmod.pbmod_encoders import build_sorter, exact_counts
from pbmod.tseitin import FALSE, TRUE, CnfBuilder, Translation


def _constant(q: NormalizedPB):
    if q.status is Status.CONST_TRUE:
        return TRUE
    if q.status is Status.CONST_FALSE:
        return FALSE
    return None


# -- BDD ---------------------------------------------------------------------

def bdd_root(q: NormalizedPB, builder: CnfBuilder) -> int:
    const = _constant(q)
    if const is not None:
        return const
    terms = list(q.terms)
    n = len(terms)
    prefix = [0]
    for a, _ in terms:
        prefix.append(prefix[-1] + a)
    if not 0 <= q.bound <= prefix[n]:
        return FALSE

    needed: List[set] = [set() for _ in range(n + 1)]
    needed[n].add(q.bound)
    for i in range(n, 0, -1):
        a = terms[i - 1][0]
        for j in needed[i]:
            for child in (j - a, j):
                if 0 <= child <= prefix[i - 1]:
                    needed[i - 1].add(child)

    nodes: List[Dict[int, int]] = [{0: TRUE} if 0 in needed[0] else {}]
    edges: List[Dict[int, Tuple[int, int]]] = [{}]
    for i in range(1, n + 1):
        a, x = terms[i - 1]
        layer: Dict[int, int] = {}
        trans: Dict[int, Tuple[int, int]] = {}
        for j in sorted(needed[i]):
            take = builder.and_(nodes[i - 1].get(j - a, FALSE), x)
            skip = builder.and_(nodes[i - 1].get(j, FALSE), -x)
            layer[j] = builder.or_(take, skip)
            trans[j] = (take, skip)
        nodes.append(layer)
        edges.append(trans)

    root = nodes[n][q.bound]
    if root == FALSE:
        return root
    # Support clauses, active under the root only: on the path selected by a
    # model of the root every node has a materialized successor and every
    # decision variable a matching edge.
    for i in range(1, n + 1):
        a, x = terms[i - 1]
        builder.add_clause([-root, -x] + [t for t, _ in edges[i].values()])
        builder.add_clause([-root, x] + [s for _, s in edges[i].values()])
        for j, node in nodes[i - 1].items():
            out = []
            if j + a in edges[i]:
                out.append(edges[i][j + a][0])
            if j in edges[i]:
                out.append(edges[i][j][1])
            builder.add_clause([-root, -node] + out)
    return root


def encode_bdd(q: NormalizedPB, builder: CnfBuilder) -> Translation:
    return builder.translation(bdd_root(q, builder), q.variables)


# -- binary adders -----------------------------------------------------------

def _full_add(builder: CnfBuilder, u: List[int], v: List[int]):
    carry = FALSE
    out = []
    for a, b in zip(u, v):
        out.append(builder.xor(builder.xor(a, b), carry))
        carry = builder.or_(builder.and_(a, b), builder.and_(a, carry), builder.and_(b, carry))
    return out, carry


def adder_root(q: NormalizedPB, builder: CnfBuilder) -> int:
    const = _constant(q)
    if const is not None:
        return const
    width = q.total.bit_length()
    vectors = [[builder.and_(TRUE if (a >> k) & 1 else FALSE, l) for k in range(width)]
               for a, l in q.terms]
    overflow = []
    while len(vectors) > 1:
        merged = []
        for i in range(0, len(vectors) - 1, 2):
            total, carry = _full_add(builder, vectors[i], vectors[i + 1])
            merged.append(total)
            overflow.append(carry)
        if len(vectors) % 2:
            merged.append(vectors[-1])
        vectors = merged
    bits = vectors[0] if vectors else [FALSE] * width
    parts = [bits[k] if (q.bound >> k) & 1 else -bits[k] for k in range(width)]
    if q.bound >> width:
        parts.append(FALSE)
    parts.extend(-c for c in overflow)
    return builder.define_conjunction_root(parts)


def encode_adder(q: NormalizedPB, builder: CnfBuilder) -> Translation:
    return builder.translation(adder_root(q, builder), q.variables)


# -- network of sorters ------------------------------------------------------

def _digits(value: int, radix: int, count: int) -> List[int]:
    out = []
    for _ in range(count - 1):
        out.append(value % radix)
        value //= radix
    out.append(value)  # top digit keeps the remaining high part
    return out


def sortnet_root(q: NormalizedPB, builder: CnfBuilder, radix: int = 4) -> int:
    if radix < 2:
        raise ValueError("radix must be at least 2")
    const = _constant(q)
    if const is not None:
        return const
    amax = max((a for a, _ in q.terms), default=0)
    ndigits = 1
    while radix ** ndigits <= amax:
        ndigits += 1
    coef_digits = [(_digits(a, radix, ndigits), l) for a, l in q.terms]
    bound_digits = _digits(q.bound, radix, ndigits)
    carry: List[int] = []
    checks = []
    for j in range(ndigits):
        inputs = list(carry)
        for digits, l in coef_digits:
            inputs.extend([l] * digits[j])
        ys = build_sorter(builder, inputs)
        counts = exact_counts(builder, ys)
        want = bound_digits[j]
        if j < ndigits - 1:
            hits = counts[want::radix]
            checks.append(builder.or_(*hits) if hits else FALSE)
            carry = [ys[p - 1] for p in range(radix, len(ys) + 1, radix)]
        else:
            checks.append(counts[want] if want < len(counts) else FALSE)
    return builder.define_conjunction_root(checks)


def encode_sortnet(q: NormalizedPB, builder: CnfBuilder, radix: int = 4) -> Translation:
    return builder.translation(sortnet_root(q, builder, radix), q.variables)
