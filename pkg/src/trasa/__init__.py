"""Traffic-aware TDMA slot assignment for convergecast sensor networks."""

from .topology import (
    SINK,
    NetworkGraph,
    dump_graph,
    generate_random_graph,
    is_connected,
    parse_graph,
    read_graph_file,
    within_h_hops,
    write_graph_file,
)
from .tree import (
    Disconnected,
    Infeasible,
    SpanningTree,
    build_spanning_tree,
    dump_tree,
    subtree_demand,
    write_tree_file,
)
from .scheduler import (
    CAUSALITY,
    CONFLICT,
    DELIVERY,
    ConflictMap,
    DemandState,
    Schedule,
    ValidationReport,
    Variant,
    Violation,
    build_conflict_map,
    dump_schedule,
    node_priority,
    parse_schedule,
    read_schedule_file,
    run_trasa,
    schedule_length_bounds,
    validate_schedule,
    write_schedule_file,
)
from .metrics import CausalityBreach, Metrics, SimTrace, compute_metrics, replay_schedule
from .oracle import (
    Coloring,
    InvalidColoring,
    TooLarge,
    coloring_to_schedule,
    optimal_schedule_length,
    schedule_to_coloring,
    validate_coloring,
)
from .experiment_cli import (
    CSV_COLUMNS,
    CannotSample,
    ConfigError,
    ExperimentConfig,
    OutputError,
    derive_seed,
    emit_csv,
    run_experiment,
    sample_instance,
)

__version__ = "0.1.0"

__all__ = [
    "SINK",
    "NetworkGraph",
    "generate_random_graph",
    "within_h_hops",
    "is_connected",
    "dump_graph",
    "parse_graph",
    "write_graph_file",
    "read_graph_file",
    "SpanningTree",
    "build_spanning_tree",
    "subtree_demand",
    "dump_tree",
    "write_tree_file",
    "Disconnected",
    "Infeasible",
    "Variant",
    "ConflictMap",
    "Schedule",
    "DemandState",
    "ValidationReport",
    "Violation",
    "CONFLICT",
    "CAUSALITY",
    "DELIVERY",
    "node_priority",
    "build_conflict_map",
    "run_trasa",
    "schedule_length_bounds",
    "validate_schedule",
    "dump_schedule",
    "parse_schedule",
    "write_schedule_file",
    "read_schedule_file",
    "SimTrace",
    "Metrics",
    "replay_schedule",
    "compute_metrics",
    "CausalityBreach",
    "Coloring",
    "optimal_schedule_length",
    "coloring_to_schedule",
    "schedule_to_coloring",
    "validate_coloring",
    "TooLarge",
    "InvalidColoring",
    "ExperimentConfig",
    "run_experiment",
    "emit_csv",
    "sample_instance",
    "derive_seed",
    "ConfigError",
    "CannotSample",
    "OutputError",
    "CSV_COLUMNS",
]
