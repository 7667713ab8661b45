"""Pseudo-Boolean constraints to CNF through modular (PBMod) decomposition."""

from pbmod.core import (
    NormalizedPB,
    Op,
    PBConstraint,
    PBModConstraint,
    Status,
    evaluate,
    normalize,
)
from pbmod.encoding import ALL_SPECS, FAMILIES, EncoderSpec, translate, translate_many
from pbmod.errors import PBModError
from pbmod.modular import Explicit, Strategy, choose_moduli, convert
from pbmod.tseitin import CnfBuilder, Translation
from pbmod.up_engine import (
    check_arc_consistency,
    check_valid_translation,
    enumerate_pb_solutions,
    solve,
    unit_propagate,
)

__all__ = [
    "ALL_SPECS",
    "CnfBuilder",
    "EncoderSpec",
    "Explicit",
    "FAMILIES",
    "NormalizedPB",
    "Op",
    "PBConstraint",
    "PBModConstraint",
    "PBModError",
    "Status",
    "Strategy",
    "Translation",
    "check_arc_consistency",
    "check_valid_translation",
    "choose_moduli",
    "convert",
    "enumerate_pb_solutions",
    "evaluate",
    "normalize",
    "solve",
    "translate",
    "translate_many",
    "unit_propagate",
]
