"""Moduli selection and the conjunction-of-congruences PB encoder."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Sequence, Tuple, Union

from pbmod.core import NormalizedPB, Op, PBConstraint, PBModConstraint, Status, normalize
from pbmod.errors import BadModulus, InsufficientModuli
from pbmod import baseline_encoders, pbmod_encoders
from pbmod.tseitin import FALSE, TRUE, CnfBuilder, Translation


class Strategy(enum.Enum):
    NATURALS = "naturals"
    PRIMES = "primes"
    PRIME_POWERS = "primepowers"


@dataclass(frozen=True)
class Explicit:
    moduli: Tuple[int, ...]

    def __init__(self, moduli: Sequence[int]):
        mods = tuple(int(m) for m in moduli)
        if any(m < 2 for m in mods):
            raise BadModulus("every modulus must be at least 2: %r" % (mods,))
        if len(set(mods)) != len(mods):
            raise BadModulus("moduli must be pairwise distinct: %r" % (mods,))
        object.__setattr__(self, "moduli", mods)


ModuliStrategy = Union[Strategy, Explicit]


def parse_strategy(text: str) -> ModuliStrategy:
    """'primes', 'naturals', 'primepowers' or 'list:2,3,5'."""
    text = text.strip().lower()
    if text.startswith("list:"):
        return Explicit([int(t) for t in text[5:].split(",") if t.strip()])
    return Strategy(text)


def lcm(values: Sequence[int]) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


_PRIMES: List[int] = [2]


def primes() -> Iterator[int]:
    """2, 3, 5, ... from a table that grows on demand."""
    i = 0
    while True:
        if i == len(_PRIMES):
            candidate = _PRIMES[-1] + 1
            while any(candidate % p == 0 for p in _PRIMES if p * p <= candidate):
                candidate += 1
            _PRIMES.append(candidate)
        yield _PRIMES[i]
        i += 1


@lru_cache(maxsize=None)
def floor_exp(k: int) -> int:
    """floor(e**k) for integer k >= 1, from a rational bracket on e."""
    terms = 8
    while True:
        lower = Fraction(0)
        fact = 1
        for i in range(terms + 1):
            if i:
                fact *= i
            lower += Fraction(1, fact)
        upper = lower + Fraction(1, fact * terms)
        lo, hi = lower ** k, upper ** k
        if math.floor(lo) == math.floor(hi):
            return math.floor(lo)
        terms *= 2


def ln_at_most(s: int, k: int) -> bool:
    """Exact test of ln(s) <= k for integers s >= 1, k >= 0."""
    if k == 0:
        return s <= 1
    return s <= floor_exp(k)


def _naturals(s: int) -> List[int]:
    top = (s - 1).bit_length() + 1 if s > 1 else 2  # ceil(log2 s) + 1
    top = max(top, 2)
    mods = list(range(2, top + 1))
    while lcm(mods) <= s:
        top += 1
        mods.append(top)
    return mods


def _primes(s: int) -> List[int]:
    mods, product = [], 1
    for p in primes():
        mods.append(p)
        product *= p
        if product > s:
            return mods
    raise AssertionError("unreachable")


def _prime_powers(s: int) -> List[int]:
    mods, product = [], 1
    for p in primes():
        power = p
        while not ln_at_most(s, power):
            power *= p
        mods.append(power)
        product *= power
        if product > s:
            return sorted(mods)
    raise AssertionError("unreachable")


def choose_moduli(s: int, strategy: ModuliStrategy) -> List[int]:
    """Ascending moduli whose lcm exceeds ``s``."""
    if s < 0:
        raise ValueError("s must be non-negative")
    s = max(s, 1)
    if isinstance(strategy, Explicit):
        mods = sorted(strategy.moduli)
        if lcm(mods) <= s:
            raise InsufficientModuli("lcm%r = %d does not exceed S = %d" % (tuple(mods), lcm(mods), s))
        return mods
    if strategy is Strategy.NATURALS:
        return _naturals(s)
    if strategy is Strategy.PRIMES:
        return _primes(s)
    return _prime_powers(s)


def convert(q: NormalizedPB, m: int) -> PBModConstraint:
    """Reduce coefficients and bound of a proper normalized constraint mod m."""
    if m < 2:
        raise BadModulus("modulus must be at least 2, got %d" % m)
    if q.status is not Status.PROPER:
        raise ValueError("convert needs a proper constraint, got %s" % q.status.value)
    return PBModConstraint(q.terms, q.bound, m)


# -- PBMod via a PB backend --------------------------------------------------

PB_ROOTS: Dict[str, Callable[[NormalizedPB, CnfBuilder], int]] = {
    "bdd": baseline_encoders.bdd_root,
    "adder": baseline_encoders.adder_root,
    "sortnet": baseline_encoders.sortnet_root,
}


def _multiple_bits(builder: CnfBuilder, total: int, modulus: int) -> List[Tuple[int, int]]:
    most = total // modulus
    if most == 0:
        return []
    ks = builder.new_vars((most + 1).bit_length())
    return [(-modulus * (1 << i), k) for i, k in enumerate(ks)]


def via_pb_root(qm: PBModConstraint, builder: CnfBuilder, backend: str = "bdd") -> int:
    encode = PB_ROOTS[backend]
    M = qm.modulus
    terms = list(qm.terms)
    total = sum(a for a, _ in terms)

    # sum a_i l_i - M * K = b with K in binary
    multiple = _multiple_bits(builder, total, M)
    holds = encode(normalize(PBConstraint(terms + multiple, Op.EQ, qm.bound)), builder)

    # complement: sum a_i l_i + T - M * K' = b with 1 <= T <= M - 1 in
    # order encoding (t_1 >= t_2 >= ...), so every offset has one spelling
    offset = builder.new_vars(M - 1)
    for lo, hi in zip(offset, offset[1:]):
        builder.add_clause((-hi, lo))
    other = _multiple_bits(builder, total + M - 1, M)
    fails = encode(normalize(PBConstraint(terms + [(1, t) for t in offset] + other,
                                          Op.EQ, qm.bound)), builder)

    v = builder.new_var()
    builder.add_clause((-v, holds))
    builder.add_clause((v, fails))
    builder.add_clause((v, offset[0]))
    # witnesses of the inactive side are pinned to false
    builder.add_clause((-v, -offset[0]))
    for _, k in multiple:
        builder.add_clause((v, -k))
    for _, k in other:
        builder.add_clause((-v, -k))
    return v


def encode_pbmod_via_pb(qm: PBModConstraint, pb_encoder: str, builder: CnfBuilder) -> Translation:
    return builder.translation(via_pb_root(qm, builder, pb_encoder), qm.variables)


# -- the modular encoder ----------------------------------------------------

PBMOD_ROOTS: Dict[str, Callable[[PBModConstraint, CnfBuilder], int]] = {
    "dp": lambda qm, b: pbmod_encoders.dp_root(qm, b, strong=True),
    "dp-lean": lambda qm, b: pbmod_encoders.dp_root(qm, b, strong=False),
    "dc": pbmod_encoders.dc_root,
    "sorter": pbmod_encoders.sorter_root,
    "card": pbmod_encoders.card_root,
    "via-pb": via_pb_root,
}


def modular_root(q: NormalizedPB, moduli: Sequence[int], oracle, builder: CnfBuilder):
    """Root literal and per-modulus component roots for ``q``."""
    if q.status is Status.CONST_TRUE:
        return TRUE, []
    if q.status is Status.CONST_FALSE:
        v = builder.new_var()
        builder.add_clause((-v,))
        return v, []
    if lcm(moduli) <= q.total:
        raise InsufficientModuli("lcm%r = %d does not exceed S = %d"
                                 % (tuple(moduli), lcm(moduli), q.total))
    encode = PBMOD_ROOTS[oracle] if isinstance(oracle, str) else oracle
    components = []
    for m in sorted(set(moduli)):
        with builder.stage("mod %d" % m):
            components.append((m, encode(convert(q, m), builder)))
    root = builder.define_conjunction_root([r for _, r in components])
    return root, components


def encode_modular(q: NormalizedPB, moduli: Sequence[int], oracle, builder: CnfBuilder) -> Translation:
    root, components = modular_root(q, moduli, oracle, builder)
    return builder.translation(root, q.variables, components)
