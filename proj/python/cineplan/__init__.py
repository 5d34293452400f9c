"""Battery-aware filming planner for camera UAV teams."""

from ._cineplan import (
    BudgetExceeded,
    Error,
    GenerationError,
    Mission,
    NoPathError,
    ParseError,
    ValidationError,
    dump_graph,
    experiment_coverage,
    experiment_optimal,
    experiment_schema,
    generate_longitudinal,
    generate_shot_mix,
    graph_stats,
    load_mission,
    load_mission_file,
    optimal_multi,
    optimal_single,
    plan,
    plan_path,
    plan_path_on_map,
    recompute_metrics,
    replan,
    solve_single,
    union_length,
)

__all__ = [
    "BudgetExceeded",
    "Error",
    "GenerationError",
    "Mission",
    "NoPathError",
    "ParseError",
    "ValidationError",
    "dump_graph",
    "experiment_coverage",
    "experiment_optimal",
    "experiment_schema",
    "generate_longitudinal",
    "generate_shot_mix",
    "graph_stats",
    "load_mission",
    "load_mission_file",
    "optimal_multi",
    "optimal_single",
    "plan",
    "plan_path",
    "plan_path_on_map",
    "recompute_metrics",
    "replan",
    "solve_single",
    "union_length",
]
