import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import signed_graphs
from tredkit.errors import TooLarge
from tredkit.graph import Arc, SignedDigraph, graph_from_edges
from tredkit.oracle import exact_max_deletions, exact_min
from tredkit.reduction import dag_reduce

CHORD = graph_from_edges([("a", "b"), ("b", "c"), ("c", "a"), ("a", "c")])


def test_examples():
    assert exact_min(graph_from_edges([("a", "b"), ("b", "c"), ("a", "c")])).kept_count == 2
    assert exact_min(CHORD).kept_count == 3
    assert exact_max_deletions(CHORD) == 1
    cyc = SignedDigraph(4, [Arc(i, (i + 1) % 4) for i in range(4)])
    assert exact_max_deletions(cyc) == 0
    k3 = SignedDigraph(3, [Arc(u, v) for u in range(3) for v in range(3) if u != v])
    assert exact_max_deletions(k3) == 3


def test_negative_pair_under_walk_semantics():
    g = graph_from_edges([("a", "b", 1), ("a", "b", -1), ("b", "a", 1)])
    r = exact_min(g, label_aware=True)
    # a->b(-) then b->a(+) is a negative cycle, so both parities survive
    assert {a.key for a in r.kept} == {(0, 1, -1), (1, 0, 1)}
    assert oracles.brute_min(2, g.arcs, True) == 2


def test_budget():
    g = SignedDigraph(6, [Arc(u, v, s) for u in range(6) for v in range(6) if u != v for s in (1, -1)])
    with pytest.raises(TooLarge):
        exact_min(g)


def test_weighted_mode_minimizes_weight():
    g = graph_from_edges([("a", "b", 1, 1), ("b", "c", 1, 1), ("c", "a", 1, 1),
                          ("a", "c", 1, 1), ("c", "b", 1, 1), ("b", "a", 1, 10)])
    r = exact_min(g, label_aware=False, weighted=True)
    assert r.kept_weight == 3
    assert r.algorithm == "oracle-weighted"


@given(signed_graphs(max_n=5, max_arcs=10), st.booleans())
def test_optimum_matches_independent_search(g, aware):
    r = exact_min(g, aware)
    assert r.verified
    assert r.kept_count == oracles.brute_min(g.n, g.arcs, aware, g.critical_arcs)
    assert oracles.is_irredundant(g.n, g.arcs, r.kept, aware, g.critical_arcs)


@given(signed_graphs(max_n=4, max_arcs=8, critical=False), st.data())
def test_adding_an_arc_raises_optimum_by_at_most_one(g, data):
    extra = Arc(data.draw(st.integers(0, g.n - 1)), data.draw(st.integers(0, g.n - 1)),
                data.draw(st.sampled_from((1, -1))))
    h = SignedDigraph(g.n, list(g.arcs) + [extra])
    assert exact_min(h).kept_count <= exact_min(g).kept_count + 1
    assert oracles.closure(g.n, g.arcs) <= oracles.closure(h.n, h.arcs)


@given(st.integers(2, 5), st.randoms(use_true_random=False))
def test_agrees_with_dag_reduce(n, rnd):
    g = SignedDigraph(n, [Arc(u, v) for u in range(n) for v in range(u + 1, n) if rnd.random() < 0.6])
    assert exact_min(g, label_aware=False).kept_count == dag_reduce(g).kept_count
