from .scalar import I, ONE, ZERO, S, Scalar, ScalarParseError, parse_scalar
from .linalg import (
    InconsistentSystem,
    Matrix,
    ShapeError,
    braid,
    braid_vector,
    coordinates,
    det,
    in_span,
    kernel_basis,
    kron,
    rank,
    rref,
    solve,
    span_basis,
    unit_vector,
    vector,
    zero_vector,
)
from .report import Check, Report

__all__ = [
    "I", "ONE", "ZERO", "S", "Scalar", "ScalarParseError", "parse_scalar",
    "InconsistentSystem", "Matrix", "ShapeError", "braid", "braid_vector", "coordinates",
    "det", "in_span", "kernel_basis", "kron", "rank", "rref", "solve", "span_basis",
    "unit_vector", "vector", "zero_vector", "Check", "Report",
]
