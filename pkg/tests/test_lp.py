import math
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import strong_graphs
from tredkit.arborescence import min_out_arborescence
from tredkit.errors import DomainError, NotStronglyConnected, TooLarge
from tredkit.graph import Arc, SignedDigraph, graph_from_edges
from tredkit.lp import (Variant, cut, hopcroft_karp, integrality_gap, matching_lower_bound,
                        ratio_report, solve_lp_small)
from tredkit.oracle import exact_min


def cycle(n):
    return SignedDigraph(n, [Arc(i, (i + 1) % n) for i in range(n)])


CHORD = graph_from_edges([("a", "b"), ("b", "c"), ("c", "a"), ("a", "c")])


def _feasible(g, sol, variant, root=0):
    for mask in range(1, (1 << g.n) - 1):
        if variant is Variant.ROOTED_ARBORESCENCE and mask >> root & 1:
            continue
        U = {v for v in range(g.n) if mask >> v & 1}
        assert sum(sol.x[a] for a in cut(g, U).into) >= 1
    assert all(x >= 0 for x in sol.x.values())


def test_cycle_lp():
    sol = solve_lp_small(cycle(3))
    assert sol.objective == 3 and all(x == 1 for x in sol.x.values()) and sol.integral


def test_arborescence_lp_example():
    g = graph_from_edges([("r", "x", 1, 1), ("r", "y", 1, 5), ("x", "y", 1, 1), ("y", "x", 1, 3)])
    sol = solve_lp_small(g, Variant.ROOTED_ARBORESCENCE, 0)
    assert sol.objective == 2 and sol.integral


def test_cutset():
    c = cut(CHORD, {2})
    assert {(a.src, a.dst) for a in c.into} == {(1, 2), (0, 2)}
    assert {(a.src, a.dst) for a in c.out_of} == {(2, 0)}
    assert not set(c.into) & set(c.out_of)


@given(strong_graphs(max_n=5, signed=False))
def test_lp_is_a_relaxation(g):
    sol = solve_lp_small(g)
    _feasible(g, sol, Variant.MIN_ED)
    assert sol.objective <= exact_min(g.without_critical(), label_aware=False).kept_count
    # weak duality, here tight
    assert sol.dual_objective == sol.objective


@given(strong_graphs(max_n=5, signed=False))
def test_critical_lp(g):
    sol = solve_lp_small(g, "critical-min-ed")
    _feasible(g, sol, Variant.CRITICAL_MIN_ED)
    assert all(sol.x[a] == 1 for a in g.critical_arcs)
    assert sol.objective <= exact_min(g, label_aware=False).kept_count


@given(strong_graphs(max_n=5, signed=False, weighted=True))
def test_arborescence_lp_is_integral_optimum(g):
    sol = solve_lp_small(g, Variant.ROOTED_ARBORESCENCE, 0)
    _feasible(g, sol, Variant.ROOTED_ARBORESCENCE)
    assert sol.objective == min_out_arborescence(g, 0).total_weight


def test_too_large():
    with pytest.raises(TooLarge):
        solve_lp_small(cycle(17))
    with pytest.raises(TooLarge):
        integrality_gap(cycle(13))


def test_gap_examples():
    assert integrality_gap(cycle(3)) == 1
    assert integrality_gap(CHORD) == 1


@given(strong_graphs(max_n=5, signed=False))
def test_gap_at_least_one(g):
    assert integrality_gap(g) >= 1


def test_gap_exceeds_one_on_found_instance():
    # found by random search over 7-node digraphs
    pairs = [(0, 1), (0, 2), (0, 4), (0, 5), (1, 0), (1, 5), (2, 0), (2, 1), (2, 4), (2, 5), (2, 6),
             (3, 6), (4, 2), (4, 3), (4, 6), (5, 1), (5, 6), (6, 1), (6, 4)]
    g = SignedDigraph(7, [Arc(u, v) for u, v in pairs])
    sol = solve_lp_small(g)
    assert not sol.integral
    assert integrality_gap(g) == Fraction(16, 15)


def test_matching_bound_examples():
    for n in range(2, 9):
        bound, arcs = matching_lower_bound(cycle(n))
        assert bound == n == len(arcs)
    assert matching_lower_bound(CHORD)[0] == 3
    with pytest.raises(NotStronglyConnected):
        matching_lower_bound(graph_from_edges([("a", "b")]))


@given(strong_graphs(max_n=5))
def test_matching_bound_below_optimum(g):
    bound, arcs = matching_lower_bound(g)
    assert bound == len(arcs)
    assert {a.src for a in arcs} == set(range(g.n)) == {a.dst for a in arcs}
    assert bound <= exact_min(g.without_critical(), label_aware=False).kept_count


def test_hopcroft_karp_small():
    match = hopcroft_karp(3, [[0, 1], [0], [1, 2]])
    assert sorted(match) == [0, 1, 2]
    assert hopcroft_karp(2, [[0], [0]]).count(-1) == 1


def test_ratio_report():
    assert ratio_report(1000, 490, 980) == (2, Fraction(51, 2))
    assert ratio_report(10, 4, 6) == (Fraction(3, 2), Fraction(3, 2))
    for k in range(1, 10):
        assert ratio_report(10, k, k) == (1, 1)
    assert ratio_report(10, 4, 10)[1] == math.inf
    for bad in [(10, 0, 3), (10, 5, 4), (10, 4, 11), (10, -1, 2)]:
        with pytest.raises(DomainError):
            ratio_report(*bad)
