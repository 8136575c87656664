"""Preemptive bipartite scheduling with per-round setup cost."""
from ._backend import BACKEND
from .instance import Instance, InstanceStats, ParseError, generate_uniform, parse, serialize, stats
from .matching import (DegreeMatrix, NoPerfectMatching, SaturatedMatrix, max_weight_perfect_matching,
                       regularize, saturate_loads)
from .schedule import Round, Schedule, Violation, cost, format_schedule, normalize, parse_schedule, validate
from .schedulers import SolveReport, hsa, os01pt, posa, sga, solve

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "DegreeMatrix", "Instance", "InstanceStats", "NoPerfectMatching", "ParseError", "Round",
    "SaturatedMatrix", "Schedule", "SolveReport", "Violation", "cost", "format_schedule", "generate_uniform",
    "hsa", "max_weight_perfect_matching", "normalize", "os01pt", "parse", "parse_schedule", "posa",
    "regularize", "saturate_loads", "serialize", "sga", "solve", "stats", "validate",
]
