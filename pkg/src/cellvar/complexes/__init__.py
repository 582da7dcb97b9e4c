"""Cellular complexes: the abstract interface and the two lattice models."""

from .core import (
    CellComplex,
    Chain,
    Cochain,
    ComplexAuditReport,
    VertexClassification,
    boundary,
    classify_vertices,
    differential,
    pair,
    stokes_suite,
    verify_complex_axioms,
)
from .cubic import CubicComplex
from .cfk import CfkComplex, push_lagrangian

__all__ = [
    "CellComplex",
    "Chain",
    "Cochain",
    "ComplexAuditReport",
    "VertexClassification",
    "boundary",
    "classify_vertices",
    "differential",
    "pair",
    "stokes_suite",
    "verify_complex_axioms",
    "CubicComplex",
    "CfkComplex",
    "push_lagrangian",
]
