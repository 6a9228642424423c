import os
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import linprog

from edcs_lp.errors import ParameterError, SolverError
from edcs_lp.lp import LinearProgram, check_assignment
from edcs_lp.simplex import (BACKENDS, SolveResult, Status, certify_optimal, iteration_cap,
                             solve_exact, solve_float)

from conftest import cached_exact, cached_lp
from reference import EXACT_OPTIMA, FLOAT_SPOTS


def small_lp(a, b, c):
    """Equality-form LP ``max c.x, A x = b, x >= 0`` from plain lists."""
    n = len(c)
    rows = tuple(tuple((j, Fraction(v)) for j, v in enumerate(r) if v) for r in a)
    return LinearProgram(None, tuple(f"x{j}" for j in range(n)),
                         tuple(f"x{j}" for j in range(n)),
                         tuple((j, Fraction(v)) for j, v in enumerate(c) if v),
                         rows, tuple(Fraction(v) for v in b),
                         tuple(f"r{i}" for i in range(len(a))))


@pytest.mark.parametrize("params, value", [((2, 1), Fraction(2)), ((7, 6), Fraction(3, 2))])
def test_known_optima(params, value):
    assert cached_exact(*params).objective == value


def test_six_five_headline():
    res = cached_exact(6, 5)
    assert res.ratio > Fraction(2, 3)
    assert round(float(res.ratio), 4) == 0.6774


@pytest.mark.parametrize("params", [(2, 1), (3, 2), (4, 3), (5, 2), (6, 4)])
def test_backends_take_identical_paths(params):
    lp = cached_lp(*params)
    results = [solve_exact(lp, backend=b) for b in BACKENDS]
    ref = results[0]
    for r in results[1:]:
        assert (r.basis, r.solution, r.duals, r.pivots, r.phase1_pivots) == \
            (ref.basis, ref.solution, ref.duals, ref.pivots, ref.phase1_pivots)


@pytest.mark.parametrize("params", [(2, 1), (5, 4), (6, 5), (8, 3)])
def test_certificate_and_feasibility(params):
    lp = cached_lp(*params)
    res = cached_exact(*params)
    assert certify_optimal(lp, res) == []
    rep = check_assignment(lp, res.solution)
    assert rep.feasible and rep.objective == res.objective
    assert len(res.basis) == lp.num_rows


def test_certificate_detects_tampering():
    lp = cached_lp(4, 3)
    res = cached_exact(4, 3)
    bad = SolveResult(Status.OPTIMAL, res.objective, list(res.solution), list(res.duals),
                      res.basis)
    bad.duals[0] += 1
    assert certify_optimal(lp, bad)
    bad = SolveResult(Status.OPTIMAL, res.objective, list(res.solution), list(res.duals),
                      res.basis)
    j = next(i for i, v in enumerate(bad.solution) if v)
    bad.solution[j] *= 2
    assert certify_optimal(lp, bad)
    assert certify_optimal(lp, solve_float(lp)) == ["result is not an exact optimum"]


@pytest.mark.parametrize("backend", BACKENDS)
def test_iteration_cap(backend):
    lp = cached_lp(4, 3)
    with pytest.raises(SolverError):
        solve_exact(lp, backend=backend, cap=5)


def test_float_iteration_cap():
    with pytest.raises(SolverError):
        solve_float(cached_lp(4, 3), cap=5)


def test_default_cap_formula():
    lp = cached_lp(2, 1)
    assert iteration_cap(lp) == 1000 * (29 + 64)


def test_unknown_backend():
    with pytest.raises(ParameterError):
        solve_exact(cached_lp(2, 1), backend="nope")


def test_float_two_one():
    res = solve_float(cached_lp(2, 1))
    assert res.status is Status.OPTIMAL and not res.exact
    assert abs(res.objective - 2) < 1e-9


@pytest.mark.parametrize("params", [(5, 3), (6, 5), (9, 8), (12, 11)])
def test_float_matches_exact(params):
    res = solve_float(cached_lp(*params))
    assert abs(res.objective - float(EXACT_OPTIMA[params])) <= 1e-6
    assert res.warnings == []


@pytest.mark.slow
def test_float_twenty_nineteen():
    res = solve_float(cached_lp(20, 19))
    assert abs(res.ratio - float(FLOAT_SPOTS[20, 19])) <= 5e-4


@pytest.mark.parametrize("solver", [solve_exact, solve_float])
def test_infeasible(solver):
    lp = small_lp([[1, 1], [1, 1]], [1, 2], [1, 0])
    assert solver(lp).status is Status.INFEASIBLE


@pytest.mark.parametrize("solver", [solve_exact, solve_float])
def test_unbounded(solver):
    lp = small_lp([[1, -1, 0], [0, 0, 1]], [0, 1], [1, 0, 0])
    assert solver(lp).status is Status.UNBOUNDED


def test_ratio_needs_optimum():
    with pytest.raises(ValueError):
        SolveResult(Status.INFEASIBLE).ratio


def test_negative_rhs_rows_are_sign_adjusted():
    lp = small_lp([[-1, -1, 0], [1, 0, -1]], [-4, 1], [1, 2, 0])
    res = solve_exact(lp)
    assert res.objective == 7 and certify_optimal(lp, res) == []


small = st.integers(-3, 3)


@given(st.integers(1, 4).flatmap(lambda m: st.integers(m, m + 3).flatmap(
    lambda n: st.tuples(st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m),
                        st.lists(small, min_size=m, max_size=m),
                        st.lists(small, min_size=n, max_size=n)))))
def test_random_lps_against_scipy(data):
    a, b, c = data
    lp = small_lp(a, b, c)
    res = solve_exact(lp)
    ref = linprog(-np.array(c, float), A_eq=np.array(a, float), b_eq=np.array(b, float),
                  bounds=(0, None), method="highs")
    expected = {0: Status.OPTIMAL, 2: Status.INFEASIBLE, 3: Status.UNBOUNDED}[ref.status]
    assert res.status is expected
    if expected is Status.OPTIMAL:
        assert abs(float(res.objective) + ref.fun) < 1e-7
        assert certify_optimal(lp, res) == []
        flt = solve_float(lp)
        assert flt.status is Status.OPTIMAL and abs(flt.objective - float(res.objective)) < 1e-6


def test_huge_entries_fall_back_to_gmp():
    lp = small_lp([[2 ** 70, 1, 0], [1, 0, 1]], [2 ** 71, 3], [1, 0, 1])
    results = {b: solve_exact(lp, backend=b) for b in BACKENDS}
    assert {r.objective for r in results.values()} == {Fraction(3)}
    if "kernel" in BACKENDS:
        from edcs_lp.simplex import _kernel
        with pytest.raises(OverflowError):
            _kernel.solve(lp.num_rows, lp.num_vars, lp.columns, lp.rhs, lp.cost, 100, "word")
        raw = _kernel.solve(lp.num_rows, lp.num_vars, lp.columns, lp.rhs, lp.cost, 100)
        assert raw["arithmetic"] == "gmp"


def test_pure_fallback_selected_by_environment():
    out = subprocess.run(
        [sys.executable, "-c", "from edcs_lp.simplex import BACKENDS; print(BACKENDS)"],
        env={**os.environ, "EDCS_LP_PURE": "1"}, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "('pure',)"
