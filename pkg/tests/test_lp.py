import os
import tempfile
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from edcs_lp.errors import ParameterError
from edcs_lp.lp import (NORMALIZATION, build_lp, check_assignment, export_lp_json,
                        export_lp_text, format_coefficient)
from edcs_lp.profiles import EdgeProfile, Params, Region, VertexProfile

from reference import LP_SIZES


def perfect_matching_point(lp):
    """One M-and-M* edge between degree-1 vertices: objective 1."""
    left = VertexProfile(Region.L_MINUS_A.side, Region.L_MINUS_A, 1, True, True)
    right = VertexProfile(Region.R_MINUS_NA.side, Region.R_MINUS_NA, 1, True, True)
    edge = EdgeProfile(left, right, True, True, True)
    x = [Fraction(0)] * lp.num_vars
    for k in (left, right, edge):
        x[lp.index[k]] = Fraction(1)
    return x


@pytest.mark.parametrize("size", sorted(LP_SIZES))
def test_sizes(size):
    lp = build_lp(Params(*size))
    assert (lp.num_rows, lp.num_vars) == LP_SIZES[size]


@pytest.mark.parametrize("beta, beta_minus", [(2, 1), (4, 3), (7, 2), (9, 8)])
def test_perfect_matching_point_is_feasible(beta, beta_minus):
    lp = build_lp(Params(beta, beta_minus))
    rep = check_assignment(lp, perfect_matching_point(lp))
    assert rep.feasible, rep.violations
    assert rep.objective == 1


def test_zero_vector_breaks_only_normalization():
    lp = build_lp(Params(3, 2))
    rep = check_assignment(lp, [0] * lp.num_vars)
    assert not rep.feasible
    assert len(rep.violations) == 1 and NORMALIZATION in rep.violations[0]


def test_negated_coordinate_reported():
    lp = build_lp(Params(2, 1))
    x = perfect_matching_point(lp)
    j = next(i for i, v in enumerate(x) if v)
    x[j] = -x[j]
    rep = check_assignment(lp, x)
    assert any(lp.var_names[j] in v for v in rep.violations)


def test_length_mismatch():
    lp = build_lp(Params(2, 1))
    with pytest.raises(ParameterError):
        check_assignment(lp, [0] * (lp.num_vars - 1))


def test_structure():
    lp = build_lp(Params(5, 3))
    lp.validate()
    assert [r for r in lp.rhs if r] == [1] and lp.rhs[-1] == 1
    assert lp.row_names[-1] == NORMALIZATION
    assert all(isinstance(k, VertexProfile) for k in lp.var_kind[:lp.num_vertex_vars])
    # an edge column has +1 entries only: degree, M and M* rows of both ends, plus normalization
    for col in lp.columns[lp.num_vertex_vars:]:
        assert all(a == 1 for _, a in col) and len(col) <= 7
    # objective is exactly the M* edge profiles
    objective_vars = {j for j, _ in lp.objective}
    assert objective_vars == {j for j, k in enumerate(lp.var_kind)
                              if isinstance(k, EdgeProfile) and k.in_mstar}


def test_isolated_variant_only_adds_free_columns():
    p = Params(3, 1)
    a, b = build_lp(p), build_lp(p, include_isolated=True)
    assert b.num_vars - a.num_vars == 2
    assert b.num_rows == a.num_rows


def test_export_is_deterministic_and_parsable():
    lp = build_lp(Params(6, 5))
    text = export_lp_text(lp)
    assert text == export_lp_text(build_lp(Params(6, 5)))
    assert text.splitlines()[0].startswith("\\")
    assert "Maximize" in text and "Subject To" in text and text.rstrip().endswith("End")
    assert max(len(line) for line in text.splitlines()) <= 200
    assert export_lp_json(lp) == export_lp_json(build_lp(Params(6, 5)))


@given(st.fractions(min_value=-1000, max_value=1000, max_denominator=10 ** 6))
def test_format_coefficient(q):
    text, exact = format_coefficient(q)
    if exact:
        assert Fraction(text) == abs(q)
    else:
        assert abs(Fraction(text) - abs(q)) < Fraction(1, 10 ** 19)


def test_external_solver_agrees():
    highspy = pytest.importorskip("highspy")
    lp = build_lp(Params(6, 5))
    with tempfile.TemporaryDirectory() as d:
        path = os.path.join(d, "m.lp")
        with open(path, "w") as fh:
            fh.write(export_lp_text(lp))
        h = highspy.Highs()
        h.setOptionValue("output_flag", False)
        h.readModel(path)
        h.run()
        value = h.getInfo().objective_function_value
    assert abs(1 / value - 0.6774) < 1e-4
