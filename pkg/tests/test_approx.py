import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import signed_graphs, strong_graphs
from tredkit.approx import (critical_max_ed_2approx, critical_min_ed_2approx, fj_weighted_min_ed,
                            kry_contract, min_btr, pseudonode_transform, reduce_graph)
from tredkit.closure import closure_equal
from tredkit.errors import CycleSearchBudgetExceeded, NotStronglyConnected
from tredkit.generate import random_strong_graph
from tredkit.graph import Arc, SignedDigraph, graph_from_edges
from tredkit.oracle import exact_min
from tredkit.reduction import dag_reduce


def cycle(n, label=1):
    return SignedDigraph(n, [Arc(i, (i + 1) % n, label) for i in range(n)])


CHORD = graph_from_edges([("a", "b"), ("b", "c"), ("c", "a"), ("a", "c")])


@pytest.mark.parametrize("solver", [fj_weighted_min_ed, critical_min_ed_2approx, kry_contract,
                                    critical_max_ed_2approx])
def test_cycle_kept_whole(solver):
    for n in range(2, 7):
        r = solver(cycle(n))
        assert r.kept_count == n and r.verified


@pytest.mark.parametrize("solver", [fj_weighted_min_ed, critical_min_ed_2approx, kry_contract,
                                    critical_max_ed_2approx])
def test_requires_strong_connectivity(solver):
    with pytest.raises(NotStronglyConnected):
        solver(graph_from_edges([("a", "b")]))


def test_fj_closed_tournament():
    r = fj_weighted_min_ed(CHORD)
    assert r.verified and r.kept_weight <= 2 * 3


def test_critical2_all_critical_keeps_everything():
    g = SignedDigraph(3, [Arc(u, v, 1, 1, True) for u in range(3) for v in range(3) if u != v])
    assert critical_min_ed_2approx(g).kept_count == 6


def test_kry_chord_example():
    r = kry_contract(CHORD, c=4)
    assert r.kept_count == 3 and r.stats["contractions"] == 1


def test_kry_budget_raises():
    g = random_strong_graph(30, 300, seed=1, crit_frac=0)
    with pytest.raises(CycleSearchBudgetExceeded):
        kry_contract(g, c=30, budget=50)


def test_kry_rejects_small_c():
    with pytest.raises(ValueError):
        kry_contract(CHORD, c=2)


def test_maxed2_examples():
    r = critical_max_ed_2approx(cycle(5))
    assert r.deleted_count == 0 and r.stats["necessary"] == 5
    r = critical_max_ed_2approx(CHORD)
    assert r.deleted_count >= 1


def test_min_btr_examples():
    dag = graph_from_edges([("a", "b"), ("b", "c"), ("a", "c"), ("c", "d")])
    assert {a.key for a in min_btr(dag).kept} == {a.key for a in dag_reduce(dag).kept}
    g = graph_from_edges([("a", "b", 1), ("a", "b", -1), ("b", "a", 1)])
    r = min_btr(g)
    assert r.verified
    assert r.stats["label_blind_kept"] == 2
    # walk semantics: a->b(-), b->a(+) already give every parity triple
    assert r.kept_count == exact_min(g, label_aware=True).kept_count == 2


def test_pseudonode_transform():
    g = graph_from_edges([("a", "b", -1, 2, True), ("b", "a", 1)])
    pm = pseudonode_transform(g)
    t = pm.transformed
    assert t.n == 3 and not t.critical_arcs
    x = 2
    assert t.arc(0, x, 1) is not None and t.arc(x, 1, -1) is not None
    assert pm.restore(t.arcs) == sorted(g.arcs, key=lambda a: a.key)
    assert pseudonode_transform(graph_from_edges([("a", "b")])).transformed.n == 2


@given(strong_graphs(max_n=4, max_extra=5))
def test_pseudonode_solution_maps_back(g):
    pm = pseudonode_transform(g)
    sol = exact_min(pm.transformed, label_aware=True).kept
    back = pm.restore(sol)
    assert {a.key for a in g.critical_arcs} <= {a.key for a in back}
    assert closure_equal(g, back, label_aware=True)


@given(strong_graphs(max_n=5, signed=False, critical=False, weighted=True), st.integers(2, 5))
def test_fj_scale_invariance(g, k):
    scaled = SignedDigraph(g.names, [Arc(a.src, a.dst, a.label, a.weight * k) for a in g.arcs])
    assert [a.key for a in fj_weighted_min_ed(g).kept] == [a.key for a in fj_weighted_min_ed(scaled).kept]


@given(strong_graphs(max_n=5, signed=False, critical=False, weighted=True))
def test_fj_weight_within_twice_optimum(g):
    r = fj_weighted_min_ed(g)
    best = exact_min(g, label_aware=False, weighted=True).kept_weight
    assert r.kept_weight <= 2 * best


@given(strong_graphs(max_n=5))
def test_solver_ratios(g):
    opt = exact_min(g, label_aware=False).kept_count
    d = len(g.critical_arcs)
    r = critical_min_ed_2approx(g)
    assert r.kept_count - d <= 2 * (opt - d)
    assert kry_contract(g, c=5).kept_count <= 2 * opt
    dels = critical_max_ed_2approx(g).deleted_count
    assert dels >= math.ceil((g.m - opt) / 2)
    aware = exact_min(g, label_aware=True).kept_count
    assert min_btr(g).kept_count <= 2 * aware


@given(signed_graphs(max_n=5, max_arcs=12), st.sampled_from(["fj", "critical2", "kry", "maxed2", "btr"]),
       st.booleans())
def test_reduce_graph_valid_irredundant(g, algo, aware):
    r = reduce_graph(g, algo, label_aware=aware)
    aware = aware or algo == "btr"
    assert r.verified
    assert oracles.same_closure(g.n, g.arcs, r.kept, aware)
    assert oracles.is_irredundant(g.n, g.arcs, r.kept, aware, g.critical_arcs)
    assert {a.key for a in g.critical_arcs} <= {a.key for a in r.kept}
    if r.lower_bound is not None:
        assert r.lower_bound <= r.kept_count


@given(signed_graphs(max_n=5, max_arcs=12))
def test_min_btr_idempotent(g):
    r = min_btr(g)
    h = r.kept_graph(g)
    assert min_btr(h).kept == r.kept


def test_reduce_graph_unknown_algo():
    with pytest.raises(ValueError):
        reduce_graph(CHORD, "nope")


def test_reduce_graph_verify_off_still_checked():
    g = random_strong_graph(30, 90, seed=2)
    r = reduce_graph(g, "critical2", repair=False)
    assert r.verified
    assert r.stats["label_aware"] is False


def test_lower_bound_is_sane_on_generated_graph():
    g = random_strong_graph(200, 800, seed=4)
    r = reduce_graph(g, "btr")
    assert r.verified and r.lower_bound <= r.kept_count
    assert Fraction(r.kept_count, r.lower_bound) < 2
