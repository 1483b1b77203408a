"""Exact incidence counting, non-degeneracy checks, bounds and the two-level pipeline."""

from ..surfaces import Surface
from .bounds import canham_bounds, choose_D, choose_E, kst_threshold, theoretical_bound
from .counting import (
    count_incidences,
    incidence_lists,
    incidences_bruteforce,
    unit_distance_pairs,
    unit_distance_report,
)
from .nondegeneracy import (
    FeasibilityGuardExceeded,
    NondegeneracyParams,
    NondegeneracyReport,
    check_nondegeneracy,
    share_common_circle,
)
from .pipeline import IncidenceCounter, IncidenceReport, PipelineConfig, run_pipeline

__all__ = [
    "FeasibilityGuardExceeded",
    "IncidenceCounter",
    "IncidenceReport",
    "NondegeneracyParams",
    "NondegeneracyReport",
    "PipelineConfig",
    "Surface",
    "canham_bounds",
    "check_nondegeneracy",
    "choose_D",
    "choose_E",
    "count_incidences",
    "incidence_lists",
    "incidences_bruteforce",
    "kst_threshold",
    "run_pipeline",
    "share_common_circle",
    "theoretical_bound",
    "unit_distance_pairs",
    "unit_distance_report",
]
