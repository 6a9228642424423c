"""Simplex solvers for equality-form LPs (exact rational and floating point)."""

from .exact import BACKENDS, DEFAULT_BACKEND, certify_optimal, iteration_cap, solve_exact
from .floating import solve_float
from .result import SolveResult, Status

__all__ = ["BACKENDS", "DEFAULT_BACKEND", "SolveResult", "Status", "certify_optimal",
           "iteration_cap", "solve_exact", "solve_float"]
