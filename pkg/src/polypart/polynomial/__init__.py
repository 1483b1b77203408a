"""Exact multivariate polynomials over Q and the algebra built on them."""

from .graded import GradedSliceBasis, graded_slice
from .linalg import bareiss_det, nullspace, rank
from .poly import (
    FactoredPoly,
    MultiPoly,
    as_fraction,
    dehomogenize,
    directional_derivative,
    divides,
    divmod_poly,
    evaluate,
    evaluate_float,
    homogenize,
    monomials_of_degree,
    monomials_up_to,
    sign_at,
    signs_at,
    squarefree_part,
)
from .resultant import resultant_wrt_last, sylvester_matrix
from .text import parse_poly, to_text
from .univariate import (
    isolate_real_roots,
    isolate_real_roots_on_line,
    rational_roots,
    refine_root,
    restrict_to_line,
)

__all__ = [
    "FactoredPoly",
    "GradedSliceBasis",
    "MultiPoly",
    "as_fraction",
    "bareiss_det",
    "dehomogenize",
    "directional_derivative",
    "divides",
    "divmod_poly",
    "evaluate",
    "evaluate_float",
    "graded_slice",
    "homogenize",
    "isolate_real_roots",
    "isolate_real_roots_on_line",
    "monomials_of_degree",
    "monomials_up_to",
    "nullspace",
    "parse_poly",
    "rank",
    "rational_roots",
    "refine_root",
    "restrict_to_line",
    "resultant_wrt_last",
    "sign_at",
    "signs_at",
    "squarefree_part",
    "sylvester_matrix",
    "to_text",
]
