"""Exact computations with exterior powers of reflection representations."""

from .errors import (
    FieldMismatch,
    InputError,
    NotDiagonalizable,
    NotInvertible,
    NotIrreducibleEvidence,
    NotRankOne,
    ParseError,
    PsiNotIntertwining,
    ReflectionError,
    ReflexError,
    StructureViolation,
    TheoremInapplicable,
)
from .exterior import ExteriorRep, compound_matrix, exterior_power
from .families import (
    FamilySpec,
    affine_An_Vx,
    conjugated_copy,
    dihedral,
    triangle_example,
    symmetric_group_standard,
)
from .field import RATIONAL, Field, QuadraticNumber
from .linalg import Matrix
from .modtheory import check_theorem1, check_theorem2, hom_space, is_simple
from .reflection import ReflectionRep, dumps_rep, load_rep, loads_rep, validate_reflection

__version__ = "0.1.0"

__all__ = [
    "ExteriorRep",
    "FamilySpec",
    "Field",
    "FieldMismatch",
    "InputError",
    "Matrix",
    "NotDiagonalizable",
    "NotInvertible",
    "NotIrreducibleEvidence",
    "NotRankOne",
    "ParseError",
    "PsiNotIntertwining",
    "QuadraticNumber",
    "RATIONAL",
    "ReflectionError",
    "ReflectionRep",
    "ReflexError",
    "StructureViolation",
    "TheoremInapplicable",
    "affine_An_Vx",
    "check_theorem1",
    "check_theorem2",
    "compound_matrix",
    "conjugated_copy",
    "dihedral",
    "dumps_rep",
    "exterior_power",
    "hom_space",
    "is_simple",
    "load_rep",
    "loads_rep",
    "triangle_example",
    "symmetric_group_standard",
    "validate_reflection",
]
