"""Bialgebroid constructions, the axiom suite, primitives and filtrations."""

from .construct import CMBialgebroid, build_cm, endomorphism_bialgebroid, enveloping_bialgebroid
from .core import GenBialgebroid, all_passed, check_bialgebroid, dot_action, first_failure
from .filtration import (
    FiltrationData,
    GradedCoring,
    freeness_certificate,
    graded_coring,
    primitive_filtration,
    strongly_graded,
)
from .primitives import (
    PrimDecomposition,
    PrimitiveData,
    StIdeal,
    prim_decomposition,
    primitive_defect,
    primitive_identities,
    primitive_subspace,
    primitives,
    st_ideal,
    st_vectors,
)

__all__ = [
    "CMBialgebroid",
    "FiltrationData",
    "GradedCoring",
    "PrimDecomposition",
    "PrimitiveData",
    "StIdeal",
    "freeness_certificate",
    "graded_coring",
    "prim_decomposition",
    "primitive_defect",
    "primitive_identities",
    "primitive_filtration",
    "primitive_subspace",
    "primitives",
    "st_ideal",
    "st_vectors",
    "strongly_graded",
    "GenBialgebroid",
    "all_passed",
    "build_cm",
    "check_bialgebroid",
    "dot_action",
    "endomorphism_bialgebroid",
    "enveloping_bialgebroid",
    "first_failure",
]
