"""Exact-mode entry point and the independent optimality certificate."""

from __future__ import annotations

import logging
import os
from fractions import Fraction

from ..errors import ParameterError
from ..lp import LinearProgram, check_assignment
from . import _pure
from .result import SolveResult, Status

log = logging.getLogger(__name__)

try:
    if os.environ.get("EDCS_LP_PURE"):
        raise ImportError("compiled kernel disabled by EDCS_LP_PURE")
    from . import _kernel
except ImportError as exc:  # pragma: no cover - depends on the build
    _kernel = None
    log.debug("using pure-Python simplex: %s", exc)

# "kernel" tries 64-bit rationals first and falls back to GMP on overflow;
# "kernel-gmp" skips the 64-bit attempt.
BACKENDS = ("kernel", "kernel-gmp", "pure") if _kernel is not None else ("pure",)
DEFAULT_BACKEND = BACKENDS[0]


def iteration_cap(lp: LinearProgram) -> int:
    return 1000 * (lp.num_rows + lp.num_vars)


def solve_exact(lp: LinearProgram, *, backend: str | None = None,
                cap: int | None = None) -> SolveResult:
    """Two-phase Bland-rule simplex in exact rational arithmetic.

    Raises :class:`~edcs_lp.errors.SolverError` when the pivot count exceeds
    ``1000 * (rows + columns)`` (or *cap*).
    """
    backend = backend or DEFAULT_BACKEND
    if backend not in BACKENDS:
        raise ParameterError(f"unknown or unavailable backend {backend!r}; have {BACKENDS}")
    cap = cap if cap is not None else iteration_cap(lp)
    if backend == "pure":
        raw = _pure.solve(lp.num_rows, lp.num_vars, lp.columns, lp.rhs, lp.cost, cap)
    else:
        raw = _kernel.solve(lp.num_rows, lp.num_vars, lp.columns, lp.rhs, lp.cost, cap,
                            "gmp" if backend == "kernel-gmp" else "auto")
        log.debug("kernel finished in %s arithmetic", raw["arithmetic"])
    status = Status(raw["status"].capitalize())
    if status is not Status.OPTIMAL:
        return SolveResult(status, pivots=raw["pivots"], phase1_pivots=raw["phase1_pivots"],
                           backend=backend)
    return SolveResult(status, objective=raw["objective"], solution=raw["x"],
                       duals=raw["y"], basis=raw["basis"], pivots=raw["pivots"],
                       phase1_pivots=raw["phase1_pivots"], exact=True, backend=backend)


def certify_optimal(lp: LinearProgram, result: SolveResult) -> list[str]:
    """Re-derive optimality of an exact result without trusting the solver's state.

    Checks primal feasibility, that the duals price every basic column at its
    cost, that no reduced cost is positive, and that the primal and dual
    objectives coincide.  Returns the list of failures (empty when certified).
    """
    problems = []
    if not result.optimal or not result.exact:
        return ["result is not an exact optimum"]
    x = result.solution
    y = [Fraction(v) for v in result.duals]
    report = check_assignment(lp, x)
    problems += report.violations
    cost = lp.cost
    basic = {j for j in result.basis if j < lp.num_vars}
    for j, col in enumerate(lp.columns):
        reduced = cost[j] - sum((y[i] * a for i, a in col), Fraction(0))
        if reduced > 0:
            problems.append(f"reduced cost of {lp.var_names[j]} is {reduced} > 0")
        if j in basic and reduced != 0:
            problems.append(f"basic column {lp.var_names[j]} has reduced cost {reduced}")
        if x[j] != 0 and j not in basic:
            problems.append(f"nonbasic column {lp.var_names[j]} is nonzero")
    dual_obj = sum((b * v for b, v in zip(lp.rhs, y)), Fraction(0))
    if dual_obj != report.objective or report.objective != result.objective:
        problems.append(f"objective mismatch: primal {report.objective}, dual {dual_obj}, "
                        f"reported {result.objective}")
    return problems
