"""Elliptic curves induced by rational Diophantine triples, with exact rank certificates."""

from .arith import coprime_basis, is_square_rat, rat, rat_str, square_class
from .curve import (
    INFINITY,
    CurveQ,
    Isomorphism,
    PointQ,
    SplitCurve,
    add,
    isomorphic_over_q,
    mul,
    on_curve,
    torsion_subgroup,
)
from .descent import descent_image, independence_bound, verify_certificate
from .triples import (
    DiophTriple,
    TripleParams,
    cuboid_params,
    induced_curve,
    lasic,
    validate_triple,
)

__version__ = "0.1.0"

__all__ = [
    "INFINITY",
    "CurveQ",
    "DiophTriple",
    "Isomorphism",
    "PointQ",
    "SplitCurve",
    "TripleParams",
    "add",
    "coprime_basis",
    "cuboid_params",
    "descent_image",
    "independence_bound",
    "induced_curve",
    "is_square_rat",
    "isomorphic_over_q",
    "lasic",
    "mul",
    "on_curve",
    "rat",
    "rat_str",
    "square_class",
    "torsion_subgroup",
    "validate_triple",
    "verify_certificate",
]
