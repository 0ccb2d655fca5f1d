"""Lin-Kernighan TSP heuristic with selectable gain criteria."""

from ._lkgain import (
    REPORT_HEADER,
    CandidateKind,
    CandidateSets,
    ExperimentConfig,
    Instance,
    LkgainError,
    PolicyKind,
    admits,
    build_candidate_sets,
    held_karp_optimum,
    improve_from_vertex,
    load_optima,
    load_tsplib,
    parse_tsplib,
    run_experiment,
)

__all__ = [
    "REPORT_HEADER",
    "CandidateKind",
    "CandidateSets",
    "ExperimentConfig",
    "Instance",
    "LkgainError",
    "PolicyKind",
    "admits",
    "build_candidate_sets",
    "held_karp_optimum",
    "improve_from_vertex",
    "load_optima",
    "load_tsplib",
    "parse_tsplib",
    "run_experiment",
]
