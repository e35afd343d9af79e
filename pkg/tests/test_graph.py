import json
import math

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from taugraph.domains import INTEGERS, QuadraticDomain, gapped_domain_for
from taugraph.factorization import Engine
from taugraph.graph import DivisorGraph, build_graph, distance, metrics, reduce, to_dot, to_json_dict
from taugraph.tau import builtin

from oracles import full_graph_oracle, vector_graph, x_power_times_linear_valid

FULL = builtin("full")


def as_values(g):
    verts = [v.value for v in g.vertices]
    edges = {(a.value, b.value) for a, b in g.edges}
    loops = {v.value: k for v, k in g.loops.items()}
    return verts, edges, loops


@given(st.integers(2, 5000))
def test_integer_full_graph_is_closed_form(n):
    g = build_graph(INTEGERS.element(n), FULL)
    primes, edges, loops = full_graph_oracle(n)
    assert as_values(g) == (primes, edges, loops)
    assert metrics(g).pseudoclique


def _vector_label(v):
    i, j = v
    return {0: f"x^{i}", 1: f"x^{i + 1} - x^{i}"}[j]


@pytest.mark.parametrize("rel,tau_vec", [
    ("full", lambda a, b: True),
    ("same-degree", lambda a, b: sum(a) == sum(b)),
])
def test_gapped_graph_matches_vector_model(rel, tau_vec):
    dom, (x,) = gapped_domain_for(["x^8-x^9"])
    g = build_graph(x, builtin(rel), Engine(builtin(rel)))
    atoms, edges, loops, _ = vector_graph((8, 1), x_power_times_linear_valid, tau_vec)
    assert sorted(str(v) for v in g.vertices) == sorted(_vector_label(a) for a in atoms)
    assert {frozenset((str(a), str(b))) for a, b in g.edges} == {
        frozenset((_vector_label(a), _vector_label(b))) for a, b in edges}
    assert {str(v): k for v, k in g.loops.items()} == {_vector_label(a): k for a, k in loops.items()}


def test_quadratic_six_is_disconnected():
    q = QuadraticDomain(-5)
    g = build_graph(q.element((6, 0)), FULL)
    m = metrics(g)
    assert [str(v) for v in g.vertices] == ["2", "1-sqrt(-5)", "1+sqrt(-5)", "3"]
    assert len(g.edges) == 2 and not m.connected and m.diameter == math.inf
    assert distance(g, g.vertices[0], g.vertices[3]) == 1
    assert distance(g, g.vertices[0], g.vertices[1]) == math.inf


def _to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


@settings(max_examples=60)
@given(st.sampled_from(["full", "coprime", "parity"]), st.integers(2, 3000))
def test_diameter_agrees_with_networkx(rel, n):
    g = build_graph(INTEGERS.element(n), builtin(rel))
    h = _to_nx(g)
    m = metrics(g)
    if nx.is_connected(h):
        assert m.diameter == nx.diameter(h)
    else:
        assert m.diameter == math.inf
    assert m.pseudoclique == (h.number_of_edges() == len(g.vertices) * (len(g.vertices) - 1) // 2)


def test_reduced_graph_drops_only_loops():
    g = build_graph(INTEGERS.element(360), FULL)
    r = reduce(g)
    assert r.vertices == g.vertices and r.edges == g.edges
    assert not any(r.loops.values()) and any(g.loops.values())
    assert metrics(r).clique and not metrics(g).clique


def test_degl_counts_loops():
    m = metrics(build_graph(INTEGERS.element(72), FULL))
    two, three = INTEGERS.element(2), INTEGERS.element(3)
    assert (m.deg[two], m.degl[two], m.degl[three]) == (1, 3, 2)


def test_empty_graph_convention():
    g = DivisorGraph(INTEGERS.element(4), "none", (), frozenset(), {})
    m = metrics(g)
    assert m.empty and m.diameter is None and m.diameter_text() == "empty"
    assert not m.connected and not m.k1


def test_dot_and_json_are_stable():
    dom, (x,) = gapped_domain_for(["x^8-x^9"])
    g = build_graph(x, builtin("same-degree"))
    dot = to_dot(g)
    assert dot == (
        "graph G {\n"
        '  label="-x^9 + x^8 (same_degree)";\n'
        '  n0 [label="x^3 - x^2"];\n'
        '  n1 [label="x^3"];\n'
        "  n0 -- n1;\n"
        "  n1 -- n1;\n"
        "}\n"
    )
    doc = to_json_dict(g)
    assert doc["vertices"] == ["x^3 - x^2", "x^3"]
    assert doc["edges"] == [[0, 1]] and doc["loops"] == {"1": 1}
    assert doc["metrics"]["diameter"] == 1
    json.dumps(doc)


def test_json_diameter_text_for_disconnected():
    q = QuadraticDomain(-5)
    doc = to_json_dict(build_graph(q.element((6, 0)), FULL))
    assert doc["metrics"]["diameter"] == "inf" and doc["metrics"]["connected"] is False
