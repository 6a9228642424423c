"""Exact approximation ratios of (beta, beta_minus)-EDCS via a factor-revealing LP."""

from .errors import (ContractViolation, EdcsError, InternalError, ParameterError,
                     RealizationError, SolverError)
from .graphs import (BipartiteGraph, EdcsInstance, brute_force_mu, complete_instance,
                     greedy_edcs, hall_witness, is_edcs, max_matching, tight_example)
from .lp import LinearProgram, build_lp, check_assignment, export_lp_json, export_lp_text
from .profiles import (EdgeProfile, Params, Region, Side, VertexProfile,
                       enumerate_edge_profiles, enumerate_vertex_profiles)
from .roundtrip import instance_to_solution, solution_to_instance, verify_instance
from .simplex import SolveResult, Status, certify_optimal, solve_exact, solve_float

__version__ = "0.1.0"

__all__ = [
    "BipartiteGraph", "ContractViolation", "EdcsError", "EdcsInstance", "EdgeProfile",
    "InternalError", "LinearProgram", "ParameterError", "Params", "RealizationError",
    "Region", "Side", "SolveResult", "SolverError", "Status", "VertexProfile",
    "brute_force_mu", "build_lp", "certify_optimal", "check_assignment",
    "complete_instance", "enumerate_edge_profiles", "enumerate_vertex_profiles",
    "export_lp_json", "export_lp_text", "greedy_edcs", "hall_witness",
    "instance_to_solution", "is_edcs", "max_matching", "solution_to_instance",
    "solve_exact", "solve_float", "tight_example", "verify_instance",
]
