"""Exact projective-line groupoids over finite prime fields and the rationals."""

__version__ = "0.1.0"

from .scalars import GF, QQ, FieldElement, FieldMismatchError, PrimeField, RationalField
from .model import (
    DegenerateHarmonicError,
    ModelArrow,
    Point,
    arrow_to_label,
    cross_ratio,
    harmonic_conjugate,
    label_to_arrow,
    minus_one,
    points,
    tri_rapport,
    verify_classical_tables,
)
from .candidate import (
    AbstractArrow,
    CandidateFormatError,
    CandidateTable,
    Endo,
    NonEndo,
    canonical_scalar,
    check_axioms,
    conjugate,
    cross_ratio_abs,
    format_arrow,
    from_model,
    parse_arrow,
    tri_rapport_abs,
    validate_structure,
)
from .reconstruct import (
    Classification,
    FieldTable,
    ReconstructionError,
    build_field,
    classify_prime,
    phi,
    reconstruct_minus_one,
    verify_field,
)
from .coordinatize import (
    CandidateIso,
    CoordinatizationError,
    Frame,
    coordinatize,
    verify_iso,
    verify_uniqueness,
)
from .reports import CheckReport, ReportGroup, TableReport, TableRowReport

__all__ = [
    "GF",
    "QQ",
    "FieldElement",
    "FieldMismatchError",
    "PrimeField",
    "RationalField",
    "DegenerateHarmonicError",
    "ModelArrow",
    "Point",
    "arrow_to_label",
    "cross_ratio",
    "harmonic_conjugate",
    "label_to_arrow",
    "minus_one",
    "points",
    "tri_rapport",
    "verify_classical_tables",
    "AbstractArrow",
    "CandidateFormatError",
    "CandidateTable",
    "Endo",
    "NonEndo",
    "canonical_scalar",
    "check_axioms",
    "conjugate",
    "cross_ratio_abs",
    "format_arrow",
    "from_model",
    "parse_arrow",
    "tri_rapport_abs",
    "validate_structure",
    "Classification",
    "FieldTable",
    "ReconstructionError",
    "build_field",
    "classify_prime",
    "phi",
    "reconstruct_minus_one",
    "verify_field",
    "CandidateIso",
    "CoordinatizationError",
    "Frame",
    "coordinatize",
    "verify_iso",
    "verify_uniqueness",
    "CheckReport",
    "ReportGroup",
    "TableReport",
    "TableRowReport",
]
