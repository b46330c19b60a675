"""Exact arithmetic over Z[sqrt3][d, U] and the circle-intersection certificate."""
from .appendix import (
    appendix_certificate,
    build_curve_equation,
    certificate_json,
    default_Q,
    listed_eq2_coefficients,
    numeric_gap_check,
    rotated_eq1_times_16,
)
from .poly import InexactDivision, IntPoly2, SurdPoly, SurdPolyInV, poly_in_U
from .resultant import bareiss_det, sylvester_matrix, sylvester_resultant

__all__ = [
    "InexactDivision",
    "IntPoly2",
    "SurdPoly",
    "SurdPolyInV",
    "appendix_certificate",
    "bareiss_det",
    "build_curve_equation",
    "certificate_json",
    "default_Q",
    "listed_eq2_coefficients",
    "numeric_gap_check",
    "poly_in_U",
    "rotated_eq1_times_16",
    "sylvester_matrix",
    "sylvester_resultant",
]
