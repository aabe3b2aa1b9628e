"""Exact rooted spanning forest counts for circulant foliations of graphs."""

from .algebra import IntegerPolynomial, chebyshev_T, det_exact, poly_eval, poly_matrix_det, resultant
from .arithmetic import integer_sqrt_exact, squarefree_part, verify_arithmetic_structure
from .asymptotics import (
    convergence_report,
    mahler_report,
    mahler_via_quadrature,
    mahler_via_roots,
    q_roots,
)
from .dsl import FamilyDescriptor, format_family, parse_family
from .engine import (
    base_forest_count,
    char_poly,
    eta,
    forest_count,
    forest_count_chebyshev,
    forest_count_oracle,
    q_at_minus_one,
)
from .families import build_family
from .model import BaseGraph, FiberSpec, FoliationSpec, expand, laplacian, make_foliation

__all__ = [
    "BaseGraph",
    "FamilyDescriptor",
    "FiberSpec",
    "FoliationSpec",
    "IntegerPolynomial",
    "base_forest_count",
    "build_family",
    "char_poly",
    "chebyshev_T",
    "convergence_report",
    "det_exact",
    "eta",
    "expand",
    "forest_count",
    "forest_count_chebyshev",
    "forest_count_oracle",
    "format_family",
    "integer_sqrt_exact",
    "laplacian",
    "mahler_report",
    "mahler_via_quadrature",
    "mahler_via_roots",
    "make_foliation",
    "parse_family",
    "poly_eval",
    "poly_matrix_det",
    "q_at_minus_one",
    "q_roots",
    "resultant",
    "squarefree_part",
    "verify_arithmetic_structure",
]
