"""Parity-aware reachability, strong components and closure comparison.

Reachability is walk reachability in the doubled graph V x {+1, -1}: a state
``(v, p)`` means "v is reached by a walk of parity p".
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ArcNotInGraph, NotStronglyConnected
from .graph import Arc, SignedDigraph

Triple = tuple[int, int, int]


@dataclass(frozen=True)
class ParityClosure:
    triples: frozenset[Triple]

    def __contains__(self, t: Triple) -> bool:
        return t in self.triples

    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) for u, v, _ in self.triples)

    def __len__(self):
        return len(self.triples)


def _parity_bfs(n: int, out: Sequence[Sequence[Arc]], src: int) -> set[tuple[int, int]]:
    seen = {(src, 1)}
    queue = deque(seen)
    while queue:
        v, p = queue.popleft()
        for a in out[v]:
            s = (a.dst, p * a.label)
            if s not in seen:
                seen.add(s)
                queue.append(s)
    return seen


def parity_closure(g: SignedDigraph) -> ParityClosure:
    triples = set()
    for u in range(g.n):
        triples.update((u, v, p) for v, p in _parity_bfs(g.n, g.out_arcs, u))
    return ParityClosure(frozenset(triples))


def reachability(g: SignedDigraph) -> frozenset[tuple[int, int]]:
    """Label-blind closure, including the trivial pair (u, u)."""
    pairs = set()
    for u in range(g.n):
        seen = {u}
        stack = [u]
        while stack:
            v = stack.pop()
            for a in g.out_arcs[v]:
                if a.dst not in seen:
                    seen.add(a.dst)
                    stack.append(a.dst)
        pairs.update((u, v) for v in seen)
    return frozenset(pairs)


def strong_components(n: int, succ: Sequence[Iterable[int]]) -> list[list[int]]:
    """Tarjan's algorithm, iterative. Components come out in topological order
    (every arc between components goes from an earlier one to a later one)."""
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    succ = [list(s) for s in succ]
    for root in range(n):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            nbrs = succ[v]
            if i < len(nbrs):
                work[-1] = (v, i + 1)
                w = nbrs[i]
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    comps.reverse()
    return comps


@dataclass(frozen=True)
class Condensation:
    component_of: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    # (C, C') -> {label: representative arc}
    dag_arcs: dict

    @property
    def size(self) -> int:
        return len(self.components)

    def topological_order(self) -> list[int]:
        return list(range(len(self.components)))


def _succ_lists(g: SignedDigraph) -> list[list[int]]:
    return [[a.dst for a in g.out_arcs[v]] for v in range(g.n)]


def scc_condense(g: SignedDigraph) -> Condensation:
    comps = strong_components(g.n, _succ_lists(g))
    comp_of = [0] * g.n
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    dag: dict[tuple[int, int], dict[int, Arc]] = {}
    for a in g.arcs:
        c, d = comp_of[a.src], comp_of[a.dst]
        if c == d:
            continue
        by_label = dag.setdefault((c, d), {})
        rep = by_label.get(a.label)
        if rep is None or (a.weight, a.src, a.dst) < (rep.weight, rep.src, rep.dst):
            by_label[a.label] = a
    return Condensation(tuple(comp_of), tuple(tuple(c) for c in comps), dag)


def is_strongly_connected(g: SignedDigraph) -> bool:
    return g.n <= 1 or len(strong_components(g.n, _succ_lists(g))) == 1


def potentials(n: int, nodes: Sequence[int], arcs: Iterable[Arc]) -> tuple[dict[int, int], bool]:
    """Node signs from a BFS tree over ``arcs`` (taken as undirected), plus
    whether some arc contradicts them.

    For a strongly connected arc set the flag is exactly "has a closed walk
    of parity -1", and without it every u->v walk has parity pot[u]*pot[v].
    """
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in nodes}
    arcs = list(arcs)
    for a in arcs:
        adj[a.src].append((a.dst, a.label))
        adj[a.dst].append((a.src, a.label))
    pot: dict[int, int] = {}
    for s in nodes:
        if s in pot:
            continue
        pot[s] = 1
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w, lab in adj[v]:
                if w not in pot:
                    pot[w] = pot[v] * lab
                    queue.append(w)
    double = any(pot[a.src] * a.label != pot[a.dst] for a in arcs)
    return pot, double


class ParityClass(enum.Enum):
    SINGLE = "single"
    DOUBLE = "double"


@dataclass(frozen=True)
class ParityClassification:
    kind: ParityClass
    witness: int | None
    potential: tuple[int, ...]

    @property
    def double(self) -> bool:
        return self.kind is ParityClass.DOUBLE


def classify_parity(g: SignedDigraph) -> ParityClassification:
    if not is_strongly_connected(g):
        raise NotStronglyConnected("classify_parity needs a strongly connected graph")
    pot, double = potentials(g.n, range(g.n), g.arcs)
    pot_t = tuple(pot[v] for v in range(g.n))
    if double:
        # every node of a strongly connected double-parity graph lies on a
        # negative closed walk, so the lowest index is a valid witness
        return ParityClassification(ParityClass.DOUBLE, 0, pot_t)
    return ParityClassification(ParityClass.SINGLE, None, pot_t)


class Implier:
    """Answers "does ``arcs`` contain a walk u -> v of parity p?".

    Pairs inside one strong component of ``arcs`` are answered from node
    potentials in O(1); other pairs fall back to a cached BFS per source.
    """

    def __init__(self, n: int, arcs: Iterable[Arc], label_aware: bool = True):
        self.n = n
        self.label_aware = label_aware
        self.out: list[list[Arc]] = [[] for _ in range(n)]
        for a in arcs:
            self.out[a.src].append(a)
        comps = strong_components(n, [[a.dst for a in self.out[v]] for v in range(n)])
        self.comp = [0] * n
        for ci, c in enumerate(comps):
            for v in c:
                self.comp[v] = ci
        self.pot = [1] * n
        self.double = [False] * len(comps)
        if label_aware:
            for ci, c in enumerate(comps):
                inner = [a for v in c for a in self.out[v] if self.comp[a.dst] == ci]
                pot, dbl = potentials(n, c, inner)
                for v in c:
                    self.pot[v] = pot[v]
                self.double[ci] = dbl
        self._cache: dict[int, set] = {}

    def implies(self, u: int, v: int, p: int = 1) -> bool:
        cu = self.comp[u]
        if cu == self.comp[v]:
            if not self.label_aware or self.double[cu]:
                return True
            return self.pot[u] * self.pot[v] == p
        reach = self._cache.get(u)
        if reach is None:
            reach = self._cache[u] = self._bfs(u)
        return ((v, p) if self.label_aware else v) in reach

    def _bfs(self, u: int) -> set:
        if not self.label_aware:
            seen = {u}
            stack = [u]
            while stack:
                x = stack.pop()
                for a in self.out[x]:
                    if a.dst not in seen:
                        seen.add(a.dst)
                        stack.append(a.dst)
            return seen
        return _parity_bfs(self.n, self.out, u)


def check_subset(g: SignedDigraph, kept: Iterable[Arc]) -> list[Arc]:
    out = []
    for a in kept:
        if g.arc(a.src, a.dst, a.label) is None:
            raise ArcNotInGraph(f"arc {a.key} is not in the graph")
        out.append(a)
    return out


def closure_equal(g: SignedDigraph, kept: Iterable[Arc], label_aware: bool = True) -> bool:
    """True iff the subgraph on ``kept`` has the same closure as ``g``.

    Since kept is a subset, it suffices that every dropped arc is implied.
    """
    kept = check_subset(g, kept)
    keys = {a.key for a in kept}
    imp = Implier(g.n, kept, label_aware)
    return all(imp.implies(a.src, a.dst, a.label) for a in g.arcs if a.key not in keys)
