"""Encoder selection and the PBConstraint -> Translation pipeline."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from pbmod import baseline_encoders
from pbmod.core import NormalizedPB, Op, PBConstraint, Status, normalize
from pbmod.modular import (
    ModuliStrategy,
    Strategy,
    choose_moduli,
    modular_root,
    parse_strategy,
    via_pb_root,
)
from pbmod.tseitin import TRUE, CnfBuilder, Translation

MODULAR_FAMILIES = {
    "modular-dp": "dp",
    "modular-dp-lean": "dp-lean",
    "modular-dc": "dc",
    "modular-sorter": "sorter",
    "modular-card": "card",
    "modular-via-pb": "via-pb",
}
BASELINE_FAMILIES = ("bdd", "adder", "sortnet")
FAMILIES = tuple(MODULAR_FAMILIES) + BASELINE_FAMILIES


@dataclass(frozen=True)
class EncoderSpec:
    family: str
    moduli: Optional[ModuliStrategy] = None
    radix: int = 4
    pb_backend: str = "bdd"

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError("unknown encoder family %r" % self.family)
        if self.is_modular:
            if self.moduli is None:
                object.__setattr__(self, "moduli", Strategy.PRIMES)
        elif self.moduli is not None:
            raise ValueError("moduli only apply to modular encoders, not %r" % self.family)
        if self.radix < 2:
            raise ValueError("radix must be at least 2")

    @property
    def is_modular(self) -> bool:
        return self.family in MODULAR_FAMILIES

    @classmethod
    def parse(cls, family: str, moduli: Optional[str] = None, radix: int = 4,
              pb_backend: str = "bdd") -> "EncoderSpec":
        return cls(family, parse_strategy(moduli) if moduli else None, radix, pb_backend)

    def __str__(self) -> str:
        return self.family


ALL_SPECS: Tuple[EncoderSpec, ...] = tuple(EncoderSpec(f) for f in FAMILIES)


def normalized_root(q: NormalizedPB, spec: EncoderSpec, builder: CnfBuilder):
    """Encode a normalized constraint; returns (root, [(modulus, root), ...])."""
    if spec.is_modular:
        moduli = choose_moduli(q.total, spec.moduli) if q.status is Status.PROPER else []
        oracle = MODULAR_FAMILIES[spec.family]
        if oracle == "via-pb":
            backend = spec.pb_backend
            oracle = lambda qm, b: via_pb_root(qm, b, backend)  # noqa: E731
        return modular_root(q, moduli, oracle, builder)
    if q.status is Status.CONST_FALSE:
        v = builder.new_var()
        builder.add_clause((-v,))
        return v, []
    if spec.family == "bdd":
        return baseline_encoders.bdd_root(q, builder), []
    if spec.family == "adder":
        return baseline_encoders.adder_root(q, builder), []
    return baseline_encoders.sortnet_root(q, builder, spec.radix), []


def translate_root(q: PBConstraint, spec: EncoderSpec, builder: CnfBuilder):
    """Root literal for ``q`` inside ``builder`` plus modulus components.

    When normalization introduces slack variables the normalized equality is
    only existentially equivalent to ``q``, so the complement of ``q`` is
    normalized and encoded as well and guarded by the negated root.  This
    keeps the root equal to the truth of ``q`` in every model.  Slack bits of
    whichever side is inactive are fixed to false, which removes redundant
    models without changing the projection onto the inputs.
    """
    builder.reserve_through(max(q.variables, default=0))
    pos = normalize(q, slack_start=builder.next_var)
    with builder.stage("slack"):
        builder.reserve_through(max(pos.slack_vars, default=0))
    with builder.stage("encoding"):
        root, components = normalized_root(pos, spec, builder)
    if not pos.slack_vars:
        return root, components
    neg = normalize(PBConstraint(q.terms, q.op.negated(), q.bound), slack_start=builder.next_var)
    with builder.stage("complement slack"):
        builder.reserve_through(max(neg.slack_vars, default=0))
    with builder.stage("complement"):
        neg_root, _ = normalized_root(neg, spec, builder)
    v = builder.new_var()
    builder.add_clause((-v, root))
    builder.add_clause((v, neg_root))
    # slack of the inactive side is pinned to false
    for y in pos.slack_vars:
        builder.add_clause((v, -y))
    for y in neg.slack_vars:
        builder.add_clause((-v, -y))
    return v, components


def translate(q: PBConstraint, spec: EncoderSpec, builder: Optional[CnfBuilder] = None) -> Translation:
    if builder is None:
        builder = CnfBuilder(max(q.variables, default=0) + 1)
    root, components = translate_root(q, spec, builder)
    return builder.translation(root, q.variables, components)


def translate_many(constraints: Sequence[PBConstraint], spec: EncoderSpec) -> Translation:
    """One CNF for a list of constraints; the root is the conjunction of their roots."""
    inputs = sorted({v for q in constraints for v in q.variables})
    builder = CnfBuilder(max(inputs, default=0) + 1)
    roots, components = [], []
    for i, q in enumerate(constraints):
        with builder.stage("constraint %d" % i):
            root, parts = translate_root(q, spec, builder)
        roots.append(root)
        components.extend(parts)
    root = builder.define_conjunction_root(roots)
    return builder.translation(root, inputs, components)
