"""CNF translations of a single PBMod-constraint ``sum a_i l_i = b (mod M)``.

Every ``*_root`` function writes its clauses into a shared builder and
returns the root literal (possibly a constant sentinel); the public
``encode_*`` wrappers package that into a Translation.
"""

from __future__ import annotations

from typing import Dict, Iterator, List, Sequence, Tuple

from pbmod.core import PBModConstraint
from pbmod.tseitin import FALSE, TRUE, CnfBuilder, Translation


def _nonzero_terms(qm: PBModConstraint) -> List[Tuple[int, int]]:
    return [(a, l) for a, l in qm.terms if a % qm.modulus]


# -- dynamic programming ---------------------------------------------------

def dp_root(qm: PBModConstraint, builder: CnfBuilder, strong: bool = True) -> int:
    if strong:
        return _dp_strong(qm, builder)
    return _dp_lean(qm, builder)


def _dp_lean(qm: PBModConstraint, builder: CnfBuilder) -> int:
    M = qm.modulus
    terms = _nonzero_terms(qm)
    n = len(terms)
    # keys reachable top-down from D[n][b]
    needed = [set() for _ in range(n + 1)]
    needed[n].add(qm.bound)
    for l in range(n, 0, -1):
        a = terms[l - 1][0]
        for m in needed[l]:
            needed[l - 1].add((m - a) % M)
            needed[l - 1].add(m)
    prev = {m: (TRUE if m == 0 else FALSE) for m in needed[0]}
    for l in range(1, n + 1):
        a, x = terms[l - 1]
        cur = {}
        for m in sorted(needed[l]):
            p = prev[(m - a) % M]  # D[l-1][m-a], taken when x holds
            q = prev[m]  # D[l-1][m], taken when x fails
            if p == q:
                cur[m] = p
            elif p == TRUE and q == FALSE:
                cur[m] = x
            elif p == FALSE and q == TRUE:
                cur[m] = -x
            elif p == FALSE and q == FALSE:
                cur[m] = FALSE
            else:
                d = builder.new_var()
                builder.add_clause((-p, -x, d))
                builder.add_clause((-q, x, d))
                builder.add_clause((-d, p, q))
                builder.add_clause((-d, p, -x))
                builder.add_clause((-d, q, x))
                cur[m] = d
        prev = cur
    return prev[qm.bound]


def _dp_strong(qm: PBModConstraint, builder: CnfBuilder) -> int:
    layers = dp_layers(qm, builder)
    if layers is None:
        return TRUE if qm.bound == 0 else FALSE
    return layers[-1][qm.bound]


def dp_layers(qm: PBModConstraint, builder: CnfBuilder):
    """Strong DP state variables, one list of M per layer (None without terms).

    Besides the recurrence D'[m] <=> take[m - a] or skip[m] and one-hot
    layers, every state and both values of x must lie on a transition; UP
    needs these support clauses to be complete.
    """
    M = qm.modulus
    terms = _nonzero_terms(qm)
    if not terms:
        return None
    layer = builder.new_vars(M)
    builder.add_clause((layer[0],))
    for m in range(1, M):
        builder.add_clause((-layer[m],))
    _one_hot(builder, layer)
    layers = [layer]
    for a, x in terms:
        take = [builder.and_(layer[m], x) for m in range(M)]
        skip = [builder.and_(layer[m], -x) for m in range(M)]
        nxt = builder.new_vars(M)
        for m in range(M):
            t1 = take[(m - a) % M]
            t0 = skip[m]
            d = nxt[m]
            builder.add_clause((-d, t1, t0))
            builder.add_clause((d, -t1))
            builder.add_clause((d, -t0))
        for m in range(M):
            builder.add_clause((-layer[m], take[m], skip[m]))
        builder.add_clause([-x] + take)
        builder.add_clause([x] + skip)
        _one_hot(builder, nxt)
        layer = nxt
        layers.append(layer)
    return layers


def _one_hot(builder: CnfBuilder, literals: Sequence[int]) -> None:
    builder.at_most_one(literals)
    builder.at_least_one(literals)


def encode_dp(qm: PBModConstraint, strong: bool, builder: CnfBuilder) -> Translation:
    root = dp_root(qm, builder, strong)
    return builder.translation(root, qm.variables)


# -- divide and conquer ----------------------------------------------------

def dc_root(qm: PBModConstraint, builder: CnfBuilder) -> int:
    M = qm.modulus
    coefs = [a for a, _ in qm.terms]
    xs = [l for _, l in qm.terms]
    memo: Dict[Tuple[int, int, int], int] = {}
    families: Dict[Tuple[int, int], Dict[int, int]] = {}

    def node(s: int, l: int, m: int) -> int:
        key = (s, l, m)
        if key in memo:
            return memo[key]
        if l == 0:
            out = TRUE if m == 0 else FALSE
        elif l == 1:
            a = coefs[s]
            if m != 0:
                out = xs[s] if a == m else FALSE
            else:
                out = -xs[s] if a != 0 else TRUE
        else:
            left = (l + 1) // 2
            right = l - left
            pairs = [builder.and_(node(s, left, (m - r) % M), node(s + left, right, r))
                     for r in range(M)]
            out = builder.or_(*pairs)
            families.setdefault((s, l), {})[m] = out
        memo[key] = out
        return out

    root = node(0, len(xs), qm.bound)
    for (s, l), fam in sorted(families.items()):
        if len(fam) == M:
            _one_hot(builder, [fam[m] for m in range(M)])
    return root


def encode_dc(qm: PBModConstraint, builder: CnfBuilder) -> Translation:
    return builder.translation(dc_root(qm, builder), qm.variables)


# -- sorters ---------------------------------------------------------------

def _merge(lo: int, hi: int, r: int) -> Iterator[Tuple[int, int]]:
    step = r * 2
    if step < hi - lo:
        yield from _merge(lo, hi, step)
        yield from _merge(lo + r, hi, step)
        for i in range(lo + r, hi - r, step):
            yield (i, i + r)
    else:
        yield (lo, lo + r)


def _sort_range(lo: int, hi: int) -> Iterator[Tuple[int, int]]:
    if hi - lo >= 1:
        mid = lo + (hi - lo) // 2
        yield from _sort_range(lo, mid)
        yield from _sort_range(mid + 1, hi)
        yield from _merge(lo, hi, 1)


def batcher_comparators(width: int) -> List[Tuple[int, int]]:
    """Comparator list of Batcher's odd-even mergesort on ``width`` wires.

    ``width`` is rounded up to a power of two.
    """
    size = 1
    while size < width:
        size *= 2
    return list(_sort_range(0, size - 1))


def build_sorter(builder: CnfBuilder, inputs: Sequence[int]) -> List[int]:
    """Unary-sorted outputs: output j (1-based) holds iff >= j inputs hold."""
    width = len(inputs)
    if width == 0:
        return []
    wires = list(inputs)
    size = 1
    while size < width:
        size *= 2
    wires.extend([FALSE] * (size - width))
    for i, j in _sort_range(0, size - 1):
        hi = builder.or_(wires[i], wires[j])
        lo = builder.and_(wires[i], wires[j])
        wires[i], wires[j] = hi, lo
    return wires[:width]


def exact_counts(builder: CnfBuilder, sorted_outputs: Sequence[int]) -> List[int]:
    """Selectors e_0..e_W where e_j holds iff exactly j inputs hold."""
    ys = [TRUE] + list(sorted_outputs) + [FALSE]
    return [builder.and_(ys[j], -ys[j + 1]) for j in range(len(sorted_outputs) + 1)]


def sorter_root(qm: PBModConstraint, builder: CnfBuilder) -> int:
    M = qm.modulus
    vector = []
    for a, l in qm.terms:
        vector.extend([l] * (a % M))
    counts = exact_counts(builder, build_sorter(builder, vector))
    hits = [counts[j] for j in range(qm.bound, len(counts), M)]
    if not hits:
        return FALSE
    return builder.or_(*hits)


def encode_sorter(qm: PBModConstraint, builder: CnfBuilder) -> Translation:
    return builder.translation(sorter_root(qm, builder), qm.variables)


# -- cardinality classes ---------------------------------------------------

def card_root(qm: PBModConstraint, builder: CnfBuilder) -> int:
    M = qm.modulus
    classes: Dict[int, List[int]] = {}
    for a, l in qm.terms:
        if a % M:
            classes.setdefault(a % M, []).append(l)
    state = [TRUE] + [FALSE] * (M - 1)
    for i in sorted(classes):
        counts = exact_counts(builder, build_sorter(builder, classes[i]))
        incoming: List[List[int]] = [[] for _ in range(M)]
        for prev in range(M):
            if state[prev] == FALSE:
                continue
            for k, e in enumerate(counts):
                t = builder.and_(state[prev], e)
                if t != FALSE:
                    incoming[(prev + i * k) % M].append(t)
        nxt = builder.new_vars(M)
        for m in range(M):
            r = nxt[m]
            builder.add_clause([-r] + incoming[m])
            for t in incoming[m]:
                builder.add_clause((r, -t))
        _one_hot(builder, nxt)
        state = nxt
    return state[qm.bound]


def encode_card(qm: PBModConstraint, builder: CnfBuilder) -> Translation:
    return builder.translation(card_root(qm, builder), qm.variables)
