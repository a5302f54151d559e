"""Signed digraph representation and the edge-list text format.

An edge-list line reads ``<src> <dst> <+|-> [crit] [w=<decimal>]``; ``#``
starts a comment. Node indices follow first appearance.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ParseError

ArcKey = tuple[int, int, int]


@dataclass(frozen=True, slots=True)
class Arc:
    src: int
    dst: int
    label: int = 1
    weight: Fraction = Fraction(1)
    critical: bool = False

    def __post_init__(self):
        if self.label not in (1, -1):
            raise ValueError(f"label must be +1 or -1, got {self.label!r}")
        if self.weight < 0:
            raise ValueError("arc weight must be nonnegative")

    @property
    def key(self) -> ArcKey:
        return (self.src, self.dst, self.label)


def arc_order(arc: Arc) -> ArcKey:
    return arc.key


def weight_order(arc: Arc):
    return (arc.weight, arc.src, arc.dst, arc.label)


class SignedDigraph:
    """Immutable node/arc store with sorted in- and out-lists.

    At most one arc exists per ``(src, dst, label)``; duplicates passed to the
    constructor are merged (critical flags OR-ed, weights min-ed).
    """

    __slots__ = ("names", "arcs", "out_arcs", "in_arcs", "_by_key", "_index")

    def __init__(self, names: Sequence[str] | int, arcs: Iterable[Arc] = ()):
        if isinstance(names, int):
            names = [str(i) for i in range(names)]
        self.names: tuple[str, ...] = tuple(names)
        n = len(self.names)
        merged: dict[ArcKey, Arc] = {}
        for a in arcs:
            if not (0 <= a.src < n and 0 <= a.dst < n):
                raise ValueError(f"arc {a.key} refers to a missing node")
            old = merged.get(a.key)
            if old is not None:
                a = replace(a, weight=min(a.weight, old.weight),
                            critical=a.critical or old.critical)
            merged[a.key] = a
        self.arcs: tuple[Arc, ...] = tuple(merged[k] for k in sorted(merged))
        self._by_key = {a.key: a for a in self.arcs}
        out_arcs: list[list[Arc]] = [[] for _ in range(n)]
        in_arcs: list[list[Arc]] = [[] for _ in range(n)]
        for a in self.arcs:
            out_arcs[a.src].append(a)
        for a in sorted(self.arcs, key=lambda a: (a.dst, a.src, a.label)):
            in_arcs[a.dst].append(a)
        self.out_arcs = tuple(tuple(x) for x in out_arcs)
        self.in_arcs = tuple(tuple(x) for x in in_arcs)
        self._index = None

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def m(self) -> int:
        return len(self.arcs)

    def index(self, name: str) -> int:
        if self._index is None:
            self._index = {nm: i for i, nm in enumerate(self.names)}
        return self._index[name]

    def arc(self, src: int, dst: int, label: int = 1) -> Arc | None:
        return self._by_key.get((src, dst, label))

    def __contains__(self, arc: Arc) -> bool:
        return self._by_key.get(arc.key) == arc

    @property
    def critical_arcs(self) -> tuple[Arc, ...]:
        return tuple(a for a in self.arcs if a.critical)

    def subgraph(self, arcs: Iterable[Arc]) -> SignedDigraph:
        """Same node set, only the given arcs."""
        return SignedDigraph(self.names, arcs)

    def induced(self, nodes: Sequence[int]) -> tuple[SignedDigraph, list[int]]:
        """Subgraph on ``nodes`` relabelled 0..k-1; returns it with the local->global map."""
        nodes = sorted(nodes)
        local = {v: i for i, v in enumerate(nodes)}
        arcs = [replace(a, src=local[a.src], dst=local[a.dst])
                for v in nodes for a in self.out_arcs[v] if a.dst in local]
        return SignedDigraph([self.names[v] for v in nodes], arcs), nodes

    def reversed(self) -> SignedDigraph:
        return SignedDigraph(self.names, (replace(a, src=a.dst, dst=a.src) for a in self.arcs))

    def without_critical(self) -> SignedDigraph:
        return SignedDigraph(self.names, (replace(a, critical=False) for a in self.arcs))

    def unsigned(self) -> SignedDigraph:
        """All labels set to +1 (parallel arcs of opposite sign merge)."""
        return SignedDigraph(self.names, (replace(a, label=1) for a in self.arcs))

    def __eq__(self, other):
        if not isinstance(other, SignedDigraph):
            return NotImplemented
        return self.names == other.names and self.arcs == other.arcs

    def __hash__(self):
        return hash((self.names, self.arcs))

    def __repr__(self):
        return f"SignedDigraph(n={self.n}, m={self.m})"


class GraphBuilder:
    """Mutable helper that interns node names in first-appearance order."""

    def __init__(self):
        self.names: list[str] = []
        self._index: dict[str, int] = {}
        self.arcs: list[Arc] = []

    def node(self, name: str) -> int:
        idx = self._index.get(name)
        if idx is None:
            idx = self._index[name] = len(self.names)
            self.names.append(name)
        return idx

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def add(self, src: str, dst: str, label: int = 1, weight=1, critical: bool = False) -> Arc:
        arc = Arc(self.node(src), self.node(dst), label, Fraction(weight), critical)
        self.arcs.append(arc)
        return arc

    def build(self) -> SignedDigraph:
        return SignedDigraph(self.names, self.arcs)


def graph_from_edges(edges: Iterable[tuple], names: Sequence[str] | None = None) -> SignedDigraph:
    """Build a graph from ``(src, dst[, label[, weight[, critical]]])`` tuples of names."""
    b = GraphBuilder()
    for nm in names or ():
        b.node(nm)
    for e in edges:
        b.add(*e)
    return b.build()


NODES_PRAGMA = "#@nodes"


def parse_edgelist(text: str) -> SignedDigraph:
    b = GraphBuilder()
    for lineno, raw in enumerate(text.splitlines(), 1):
        if raw.startswith(NODES_PRAGMA):
            for nm in raw[len(NODES_PRAGMA):].split():
                b.node(nm)
            continue
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) < 3:
            raise ParseError(lineno, "expected '<src> <dst> <+|->'")
        src, dst, sign, *rest = toks
        if sign not in ("+", "-"):
            raise ParseError(lineno, f"bad sign {sign!r}")
        critical = False
        weight = Fraction(1)
        for tok in rest:
            if tok == "crit":
                critical = True
            elif tok.startswith("w="):
                try:
                    weight = Fraction(tok[2:])
                except ValueError:
                    raise ParseError(lineno, f"bad weight {tok[2:]!r}") from None
                if weight < 0:
                    raise ParseError(lineno, "negative weight")
            else:
                raise ParseError(lineno, f"unexpected token {tok!r}")
        b.add(src, dst, 1 if sign == "+" else -1, weight, critical)
    return b.build()


def format_decimal(x: Fraction) -> str:
    """Exact decimal rendering; falls back to ``p/q`` when not terminating."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    d = x.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{x.numerator}/{x.denominator}"
    digits = max(twos, fives)
    scaled = x * 10 ** digits
    sign = "-" if scaled < 0 else ""
    s = str(abs(scaled.numerator)).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}".rstrip("0").rstrip(".")


def format_arc(g: SignedDigraph, a: Arc) -> str:
    parts = [g.names[a.src], g.names[a.dst], "+" if a.label > 0 else "-"]
    if a.critical:
        parts.append("crit")
    if a.weight != 1:
        parts.append(f"w={format_decimal(a.weight)}")
    return " ".join(parts)


def format_edgelist(g: SignedDigraph, arcs: Iterable[Arc] | None = None,
                    declare_nodes: bool = True) -> str:
    """Render arcs as edge-list text.

    The leading ``#@nodes`` line pins node order (and isolated nodes) so that
    parsing the output reproduces ``g`` exactly; plain readers see a comment.
    """
    arcs = g.arcs if arcs is None else sorted(arcs, key=arc_order)
    head = f"{NODES_PRAGMA} {' '.join(g.names)}\n" if declare_nodes and g.n else ""
    return head + "".join(format_arc(g, a) + "\n" for a in arcs)
