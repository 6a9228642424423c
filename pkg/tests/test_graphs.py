import random

import pytest
from hypothesis import given, strategies as st

from edcs_lp.errors import ContractViolation, ParameterError
from edcs_lp.graphs import (BipartiteGraph, GraphFormatError, brute_force_mu, complete_instance,
                            covers_exactly_one, degrees, dump_instance, greedy_edcs, hall_value,
                            hall_witness, is_edcs, is_matching, max_matching, neighborhood,
                            parse_graph_json, tight_example)
from edcs_lp.profiles import Params


@st.composite
def graphs(draw, max_side=8, max_edges=None):
    nl, nr = draw(st.integers(0, max_side)), draw(st.integers(0, max_side))
    pairs = [(u, v) for u in range(nl) for v in range(nr)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=max_edges)
                 if pairs else st.just([]))
    return BipartiteGraph.from_edges(nl, nr, edges)


def random_graph(rng, nl, nr, p):
    return BipartiteGraph.from_edges(
        nl, nr, [(u, v) for u in range(nl) for v in range(nr) if rng.random() < p])


@given(graphs())
def test_max_matching_is_maximum(g):
    m = max_matching(g)
    assert m <= g.edge_set and is_matching(m)
    assert len(m) == brute_force_mu(g)


@given(graphs(max_side=10, max_edges=12))
def test_brute_force_edge_subsets(g):
    assert brute_force_mu(g) == len(max_matching(g))


def test_brute_force_refuses_large():
    g = BipartiteGraph.from_edges(9, 9, [(i, j) for i in range(9) for j in range(2)])
    with pytest.raises(ParameterError):
        brute_force_mu(g)


def test_large_matching_runs():
    rng = random.Random(3)
    g = random_graph(rng, 400, 400, 0.01)
    m = max_matching(g)
    assert hall_value(g, hall_witness(g, m)) == len(m)


@given(graphs())
def test_hall_witness_identity(g):
    m = max_matching(g)
    a = hall_witness(g, m)
    n_a = neighborhood(g.edge_set, a)
    assert len(n_a) + g.n_left - len(a) == len(m)
    assert covers_exactly_one(m, a, n_a) == []


def test_hall_witness_rejects_non_maximum():
    g = BipartiteGraph.from_edges(2, 2, [(0, 0), (0, 1), (1, 0)])
    with pytest.raises(ContractViolation):
        hall_witness(g, {(0, 0)})
    with pytest.raises(ContractViolation):
        hall_witness(g, {(0, 0), (0, 1)})
    with pytest.raises(ContractViolation):
        hall_witness(g, {(1, 1)})


def test_graph_validation():
    with pytest.raises(ParameterError):
        BipartiteGraph(2, 2, ((0, 2),))
    g = BipartiteGraph(2, 2, ((0, 0), (0, 0), (1, 1)))
    assert not g.is_simple() and g.duplicates() == [(0, 0)]


def test_is_edcs_reports_both_directions():
    g = BipartiteGraph.from_edges(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)])
    p = Params(2, 1)
    rep = is_edcs(g, set(), p)
    assert not rep and len(rep.violations) == 4
    assert all(not v.in_h and v.degree_sum == 0 for v in rep.violations)
    rep = is_edcs(g, g.edge_set, p)
    assert len(rep.violations) == 4 and all(v.in_h and v.degree_sum == 4 for v in rep.violations)
    assert is_edcs(g, {(0, 0), (1, 1)}, p).ok
    with pytest.raises(ParameterError):
        is_edcs(g, {(0, 0), (5, 5)}, p)


@given(graphs(), st.integers(2, 7).flatmap(
    lambda b: st.builds(Params, st.just(b), st.integers(1, b - 1))))
def test_greedy_edcs(g, p):
    h, fixes = greedy_edcs(g, p, return_fixes=True)
    assert is_edcs(g, h, p).ok
    n = g.n_left + g.n_right
    assert fixes <= (2 * p.beta - 1) ** 2 * n / 16 + 1
    assert fixes <= 1 + (2 * p.beta - 1) * n * p.beta / 2
    assert greedy_edcs(g, p) == h


def test_greedy_potential_increases():
    rng = random.Random(11)
    g = random_graph(rng, 12, 12, 0.5)
    p = Params(4, 2)
    h, fixes = greedy_edcs(g, p, return_fixes=True)
    dl, dr = degrees(12, 12, h)
    phi = (2 * p.beta - 1) * len(h) - sum(d * d for d in dl + dr)
    assert phi >= fixes


@pytest.mark.parametrize("k, n", [(1, 1), (1, 3), (2, 2), (3, 4), (4, 6)])
def test_tight_example(k, n):
    t = tight_example(k, n)
    assert t.params == Params(2 * k + 1, 2 * k)
    assert (t.g.n_left, t.g.n_right) == (3 * n, 3 * n)
    assert is_edcs(t.g, t.h, t.params).ok
    assert len(max_matching(t.g)) == len(t.mstar) == 3 * n
    assert len(max_matching(t.g.subgraph(t.h))) == len(t.m) == 2 * n
    assert t.ratio == 1.5


def test_tight_example_preconditions():
    with pytest.raises(ParameterError):
        tight_example(5, 4)
    with pytest.raises(ParameterError):
        tight_example(0, 3)


def test_complete_instance():
    rng = random.Random(5)
    g = random_graph(rng, 10, 9, 0.3)
    p = Params(3, 2)
    inst = complete_instance(g, greedy_edcs(g, p), p)
    assert len(inst.mstar) == len(max_matching(g))
    assert hall_value(g.subgraph(inst.h), inst.witness_a) == len(inst.m)


def test_json_roundtrip():
    t = tight_example(2, 3)
    doc = parse_graph_json(dump_instance(t))
    assert (doc.g, doc.h, doc.m, doc.mstar, doc.witness_a, doc.params) == \
        (t.g, t.h, t.m, t.mstar, t.witness_a, t.params)


def test_json_optional_fields():
    doc = parse_graph_json('{"n_left": 1, "n_right": 1, "edges": [[0, 0]]}')
    assert doc.h is None and doc.params is None and doc.g.edges == ((0, 0),)


@pytest.mark.parametrize("text, fragment", [
    ('{"n_left": 1,\n "n_right": 1, "edges": [[0, 0]', "line 2"),
    ('[1, 2]', "JSON object"),
    ('{"n_left": 1, "n_right": 1}', "edges"),
    ('{"n_left": 1, "n_right": 1, "edges": [[0]]}', "pairs"),
    ('{"n_left": 1, "n_right": 1, "edges": [[0, 3]]}', "out of range"),
    ('{"n_left": 1, "n_right": 1, "edges": [], "beta": 2}', "beta"),
])
def test_json_errors(text, fragment):
    with pytest.raises(GraphFormatError, match=fragment):
        parse_graph_json(text)
