"""Ant-colony shortest-path search on roadmap graphs.

A Max-Min Ant System engine with constant and exponentially saturating
pheromone deposition, roadmap generation and persistence, an exact
shortest-path oracle, closed-form trail-dynamics analysis, experiment
protocols (sweeps, rule comparisons, corpus studies), and surrogate
models recommending (alpha, beta) from roadmap features.
"""

from .dynamics import (
    SINGULAR,
    STABLE,
    UNSTABLE,
    DynamicsParams,
    SingularParametersError,
    closed_form,
    closed_form_constant,
    closed_form_exponential,
    discrete_trace,
    stability_verdict,
    steady_state,
)
from .harness import (
    ComparisonReport,
    CorpusRow,
    SweepCell,
    SweepGrid,
    compare_rules,
    convergence_time,
    corpus_study,
    sweep,
)
from .mmas import (
    CONSTANT,
    EXPONENTIAL,
    HOP,
    ITERATION,
    IterationRecord,
    MmasConfig,
    RunTrace,
    Tour,
    TrailState,
    construct_path,
    deposition_amount,
    load_config,
    next_node,
    run,
    transition_distribution,
    update_trails,
    write_trace_csv,
)
from .oracle import NoPathError, PathResult, shortest_path
from .predictor import (
    ALPHA_MODEL,
    BETA_MODEL,
    FitEvaluation,
    FitModel,
    Recommendation,
    chebyshev_basis,
    evaluate_fit,
    load_fit_model,
    recommend_parameters,
    sigmoid_basis,
    table_checksum,
)
from .roadmap import (
    City,
    RoadmapFeatures,
    RoadmapGraph,
    RoadmapParseError,
    UnsupportedVersionError,
    compute_features,
    generate_roadmap,
    load_roadmap,
    save_roadmap,
)

__version__ = "0.1.0"

__all__ = [
    "ALPHA_MODEL",
    "BETA_MODEL",
    "CONSTANT",
    "EXPONENTIAL",
    "HOP",
    "ITERATION",
    "SINGULAR",
    "STABLE",
    "UNSTABLE",
    "City",
    "ComparisonReport",
    "CorpusRow",
    "DynamicsParams",
    "FitEvaluation",
    "FitModel",
    "IterationRecord",
    "MmasConfig",
    "NoPathError",
    "PathResult",
    "Recommendation",
    "RoadmapFeatures",
    "RoadmapGraph",
    "RoadmapParseError",
    "RunTrace",
    "SingularParametersError",
    "SweepCell",
    "SweepGrid",
    "Tour",
    "TrailState",
    "UnsupportedVersionError",
    "chebyshev_basis",
    "closed_form",
    "closed_form_constant",
    "closed_form_exponential",
    "compare_rules",
    "compute_features",
    "construct_path",
    "convergence_time",
    "corpus_study",
    "deposition_amount",
    "discrete_trace",
    "evaluate_fit",
    "generate_roadmap",
    "load_config",
    "load_fit_model",
    "load_roadmap",
    "next_node",
    "recommend_parameters",
    "run",
    "save_roadmap",
    "shortest_path",
    "sigmoid_basis",
    "stability_verdict",
    "steady_state",
    "sweep",
    "table_checksum",
    "transition_distribution",
    "update_trails",
    "write_trace_csv",
]
