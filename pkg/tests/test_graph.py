from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import signed_graphs
from tredkit.errors import ParseError
from tredkit.graph import (Arc, GraphBuilder, SignedDigraph, format_decimal, format_edgelist,
                           graph_from_edges, parse_edgelist)


def test_arc_rejects_bad_label_and_weight():
    with pytest.raises(ValueError):
        Arc(0, 1, 0)
    with pytest.raises(ValueError):
        Arc(0, 1, 1, Fraction(-1))


def test_duplicates_merge_critical_or_weight_min():
    g = SignedDigraph(2, [Arc(0, 1, 1, 3), Arc(0, 1, 1, 2, True), Arc(0, 1, -1)])
    assert g.m == 2
    a = g.arc(0, 1, 1)
    assert a.critical and a.weight == 2
    assert g.arc(0, 1, -1) is not None


def test_adjacency_lists_consistent():
    g = graph_from_edges([("a", "b", 1), ("b", "c", -1), ("c", "a", 1), ("a", "a", -1)])
    assert sum(len(x) for x in g.out_arcs) == g.m == sum(len(x) for x in g.in_arcs)
    for v in range(g.n):
        assert all(a.src == v for a in g.out_arcs[v])
        assert all(a.dst == v for a in g.in_arcs[v])
    assert [a.key for a in g.out_arcs[0]] == sorted(a.key for a in g.out_arcs[0])


def test_out_of_range_arc():
    with pytest.raises(ValueError):
        SignedDigraph(2, [Arc(0, 2)])


def test_parse_example_line():
    g = parse_edgelist("# comment\nRAS MEK + crit w=1\nMEK ERK - w=0.5  # trailing\n")
    assert g.names == ("RAS", "MEK", "ERK")
    ras_mek = g.arc(0, 1, 1)
    assert ras_mek.critical and ras_mek.weight == 1
    assert g.arc(1, 2, -1).weight == Fraction(1, 2)


@pytest.mark.parametrize("line, reason", [
    ("a b", "expected"),
    ("a b x", "bad sign"),
    ("a b + w=abc", "bad weight"),
    ("a b + w=-1", "negative"),
    ("a b + bogus", "unexpected"),
])
def test_parse_errors_carry_line_numbers(line, reason):
    with pytest.raises(ParseError) as exc:
        parse_edgelist("a b +\n\n" + line)
    assert exc.value.line == 3
    assert reason in exc.value.reason


def test_format_decimal():
    assert format_decimal(Fraction(5, 2)) == "2.5"
    assert format_decimal(Fraction(3)) == "3"
    assert format_decimal(Fraction(1, 8)) == "0.125"
    assert format_decimal(Fraction(1, 3)) == "1/3"


def test_round_trip_keeps_isolated_nodes_and_order():
    b = GraphBuilder()
    b.node("z")
    b.add("y", "x", -1, Fraction(3, 4), True)
    g = b.build()
    g2 = parse_edgelist(format_edgelist(g))
    assert g2 == g
    assert g2.names == ("z", "y", "x")


@given(signed_graphs(max_n=6))
def test_round_trip_property(g):
    assert parse_edgelist(format_edgelist(g)) == g


@given(signed_graphs(max_n=5))
def test_reverse_twice_is_identity(g):
    assert g.reversed().reversed() == g


@given(signed_graphs(min_n=2, max_n=5), st.data())
def test_induced_maps_back(g, data):
    nodes = data.draw(st.lists(st.integers(0, g.n - 1), unique=True, min_size=1))
    sub, back = g.induced(nodes)
    inside = {a.key for a in g.arcs if a.src in nodes and a.dst in nodes}
    assert {(back[a.src], back[a.dst], a.label) for a in sub.arcs} == inside
