"""Exhaustive depth-2 protocol search."""

from .engine import ValueEngine, party_features, value_tensor, worker_count
from .regions import AlgebraicRoot, DistillationRegion, Interval, distillation_region, max_on_unit, real_roots
from .report import (
    SAMPLE_POINTS,
    GhzSearchResult,
    SearchEntry,
    SearchReport,
    baseline_poly,
    ghz_search_depth2,
    protocol_value_poly,
    search_report,
)
from .space import (
    ADAPTIVE_STAGES,
    ALL_FINALS,
    NON_ADAPTIVE_STAGES,
    PARITY_FINALS,
    FinalMode,
    SearchSpaceSpec,
    WiringMode,
    enumerate_depth2,
)

__all__ = [
    "ValueEngine", "party_features", "value_tensor", "worker_count",
    "AlgebraicRoot", "DistillationRegion", "Interval", "distillation_region", "max_on_unit", "real_roots",
    "SAMPLE_POINTS", "GhzSearchResult", "SearchEntry", "SearchReport", "baseline_poly",
    "ghz_search_depth2", "protocol_value_poly", "search_report",
    "ADAPTIVE_STAGES", "ALL_FINALS", "NON_ADAPTIVE_STAGES", "PARITY_FINALS",
    "FinalMode", "SearchSpaceSpec", "WiringMode", "enumerate_depth2",
]
