"""Hypercyclicity of differentiation-composition operators on H(C^N).

Modules
-------
fnalg
    Exp-polynomial algebra: derivatives, affine composition, polydisc norms.
ops
    The operators ``C_phi o D^alpha`` and ``C_phi o D_v``, closed-form
    iterates, right inverses and conjugations.
classify
    Hypercyclicity verdicts for diagonal and directional operators.
witness
    Transitivity witnesses, non-hypercyclicity certificates, Runge fitting.
cli
    Command-line front end.
"""

from ._accel import BACKEND
from .fnalg import (
    AffineMap,
    DiagonalAffineMap,
    ExpPoly,
    Polydisc,
    compose_affine,
    compose_diagonal,
    directional_derivative,
    evaluate,
    norm_sampled,
    norm_upper_bound,
    partial_derivative,
)
from .ops import DiagonalOperator, DirectionalOperator, apply, iterate
from .classify import Classification, classify_diagonal, classify_directional, classify_operator
from .scalar import DEFAULT_PREC
from .witness import non_hc_certificate, transitivity_witness_expansive, transitivity_witness_translation

__all__ = [
    "BACKEND",
    "DEFAULT_PREC",
    "AffineMap",
    "Classification",
    "DiagonalOperator",
    "DirectionalOperator",
    "DiagonalAffineMap",
    "ExpPoly",
    "Polydisc",
    "apply",
    "classify_diagonal",
    "classify_directional",
    "classify_operator",
    "compose_affine",
    "compose_diagonal",
    "directional_derivative",
    "evaluate",
    "iterate",
    "non_hc_certificate",
    "norm_sampled",
    "norm_upper_bound",
    "partial_derivative",
    "transitivity_witness_expansive",
    "transitivity_witness_translation",
]
