"""Structure theory and exact arithmetic for relative Cuntz-Pimsner rings of finite graphs."""

__version__ = "0.1.0"

from .graph import (  # noqa: E402
    ClosedPath,
    Graph,
    Path,
    augment_relative,
    count_paths,
    cycles_without_exit,
    enumerate_hereditary_saturated,
    hereditary_saturated_closure,
    quotient_graph,
    regular_vertices,
    simple_closed_paths_at,
)
from .structure import (  # noqa: E402
    AnalysisReport,
    analyze,
    condition_K,
    condition_K_via_quotients,
    condition_L,
    is_maximal,
    is_super_maximal,
    j_bracket,
    j_infinity,
)

__all__ = [
    "AnalysisReport",
    "ClosedPath",
    "Graph",
    "Path",
    "analyze",
    "augment_relative",
    "condition_K",
    "condition_K_via_quotients",
    "condition_L",
    "count_paths",
    "cycles_without_exit",
    "enumerate_hereditary_saturated",
    "hereditary_saturated_closure",
    "is_maximal",
    "is_super_maximal",
    "j_bracket",
    "j_infinity",
    "quotient_graph",
    "regular_vertices",
    "simple_closed_paths_at",
]
