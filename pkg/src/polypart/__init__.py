"""Polynomial partitioning and exact incidence counting for points and surfaces in R^d."""

from . import configgen
from .incidence import (
    FeasibilityGuardExceeded,
    IncidenceCounter,
    IncidenceReport,
    NondegeneracyParams,
    NondegeneracyReport,
    PipelineConfig,
    canham_bounds,
    check_nondegeneracy,
    choose_D,
    choose_E,
    count_incidences,
    incidence_lists,
    incidences_bruteforce,
    kst_threshold,
    run_pipeline,
    share_common_circle,
    theoretical_bound,
    unit_distance_pairs,
    unit_distance_report,
)
from .partition import (
    BisectionCertificate,
    BisectionFailure,
    PartitionResult,
    PolynomialPartitioner,
    SignCondition,
    SurfaceInZeroSet,
    assign_cells,
    bisect_families,
    build_partition,
    count_cells_met_by_surface,
)
from .polynomial import FactoredPoly, MultiPoly, graded_slice, parse_poly, to_text
from .real_ideal import (
    RealIdealVerdict,
    hat_poly,
    irreducibility_heuristic,
    is_real_principal,
    realify_family,
    realify_with_report,
)
from .surface_partition import (
    SurfacePartitioner,
    SurfacePartitionResult,
    build_surface_partition,
    realizations_on_surface,
)
from .surfaces import Surface

__version__ = "0.1.0"

__all__ = [
    "BisectionCertificate",
    "BisectionFailure",
    "FactoredPoly",
    "FeasibilityGuardExceeded",
    "IncidenceCounter",
    "IncidenceReport",
    "MultiPoly",
    "NondegeneracyParams",
    "NondegeneracyReport",
    "PartitionResult",
    "PipelineConfig",
    "PolynomialPartitioner",
    "RealIdealVerdict",
    "SignCondition",
    "Surface",
    "SurfaceInZeroSet",
    "SurfacePartitionResult",
    "SurfacePartitioner",
    "assign_cells",
    "bisect_families",
    "build_partition",
    "build_surface_partition",
    "canham_bounds",
    "check_nondegeneracy",
    "choose_D",
    "choose_E",
    "configgen",
    "count_cells_met_by_surface",
    "count_incidences",
    "graded_slice",
    "hat_poly",
    "incidence_lists",
    "incidences_bruteforce",
    "irreducibility_heuristic",
    "is_real_principal",
    "kst_threshold",
    "parse_poly",
    "realify_family",
    "realify_with_report",
    "realizations_on_surface",
    "run_pipeline",
    "share_common_circle",
    "theoretical_bound",
    "to_text",
    "unit_distance_pairs",
    "unit_distance_report",
]
