"""Minimum-weight spanning arborescences (Edmonds / Chu-Liu).

Contraction follows the classical rule: when a cycle C of chosen arcs is
contracted, an arc (u, v) entering C at v is re-weighted to
``w(u, v) - alpha + w(C)`` where alpha is the weight of the chosen arc into v
and w(C) the minimum chosen weight on C. Per-node candidate heaps carry a
lazy offset and are merged small-into-large, so a contraction round costs
O(m log^2 n) overall. Mega-nodes are expanded in reverse contraction order
with a rollback union-find.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import Unreachable
from .graph import Arc, SignedDigraph


class _RollbackUF:
    def __init__(self, n: int):
        self.e = [-1] * n
        self.hist: list[tuple[int, int]] = []

    def find(self, x: int) -> int:
        e = self.e
        while e[x] >= 0:
            x = e[x]
        return x

    def time(self) -> int:
        return len(self.hist)

    def rollback(self, t: int) -> None:
        while len(self.hist) > t:
            i, old = self.hist.pop()
            self.e[i] = old

    def join(self, a: int, b: int) -> bool:
        a, b = self.find(a), self.find(b)
        if a == b:
            return False
        e = self.e
        if e[a] > e[b]:
            a, b = b, a
        self.hist.append((a, e[a]))
        self.hist.append((b, e[b]))
        e[a] += e[b]
        e[b] = a
        return True


def _reachable_from(n: int, edges: Sequence[tuple[int, int, int]], root: int) -> list[bool]:
    succ: list[list[int]] = [[] for _ in range(n)]
    for a, b, _ in edges:
        succ[a].append(b)
    seen = [False] * n
    seen[root] = True
    stack = [root]
    while stack:
        v = stack.pop()
        for w in succ[v]:
            if not seen[w]:
                seen[w] = True
                stack.append(w)
    return seen


def edmonds(n: int, edges: Sequence[tuple[int, int, int]], root: int) -> list[int]:
    """Minimum out-arborescence over integer-weighted ``(src, dst, w)`` edges.

    Returns ``parent`` where ``parent[v]`` is the index of the tree edge into
    v (``-1`` for the root). Equal weights are resolved by edge index, so
    callers order ``edges`` to fix tie-breaking.
    """
    seen_ok = _reachable_from(n, edges, root)
    for v in range(n):
        if not seen_ok[v]:
            raise Unreachable(v)

    uf = _RollbackUF(n)
    heaps: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    offs = [0] * n
    for i, (a, b, w) in enumerate(edges):
        if b != root and a != b:
            heaps[b].append((w, i))
    for h in heaps:
        heapq.heapify(h)

    seen = [-1] * n
    seen[root] = root
    in_edge = [-1] * n
    cycles: list[tuple[int, int, list[int]]] = []

    for s in range(n):
        u = s
        q_edges: list[int] = []
        q_w: list[int] = []
        path: list[int] = []
        while seen[u] < 0:
            h = heaps[u]
            while uf.find(edges[h[0][1]][0]) == u:
                heapq.heappop(h)
            w, i = heapq.heappop(h)
            ew = w + offs[u]
            offs[u] -= ew
            q_edges.append(i)
            q_w.append(ew)
            path.append(u)
            seen[u] = s
            u = uf.find(edges[i][0])
            if seen[u] == s:
                t = uf.time()
                cyc: list[int] = []
                cyc_w: list[int] = []
                merged_h: list[tuple[int, int]] = []
                merged_off = 0
                while True:
                    x = path.pop()
                    cyc.append(q_edges.pop())
                    cyc_w.append(q_w.pop())
                    hx, ox = heaps[x], offs[x]
                    heaps[x] = []
                    if len(hx) > len(merged_h):
                        hx, merged_h = merged_h, hx
                        ox, merged_off = merged_off, ox
                    for ww, ii in hx:
                        heapq.heappush(merged_h, (ww + ox - merged_off, ii))
                    if not uf.join(u, x):
                        break
                u = uf.find(u)
                heaps[u] = merged_h
                # reduced weight of an entering arc: w - alpha + w(C)
                offs[u] = merged_off + min(cyc_w)
                seen[u] = -1
                cycles.append((u, t, cyc))
        for i in q_edges:
            in_edge[uf.find(edges[i][1])] = i

    for u, t, cyc in reversed(cycles):
        uf.rollback(t)
        entering = in_edge[u]
        for i in cyc:
            in_edge[uf.find(edges[i][1])] = i
        in_edge[uf.find(edges[entering][1])] = entering
    in_edge[root] = -1
    return in_edge


def scale_weights(weights: Sequence[Fraction]) -> list[int]:
    """Integers proportional to ``weights`` (common denominator)."""
    weights = [w if isinstance(w, int) else Fraction(w) for w in weights]
    den = 1
    for w in weights:
        if not isinstance(w, int) and w.denominator != 1:
            den = math.lcm(den, w.denominator)
    if den == 1:
        return [int(w) for w in weights]
    return [int(w * den) for w in weights]


@dataclass(frozen=True)
class Arborescence:
    root: int
    orientation: str  # "out" or "in"
    parent_arc: dict  # non-root node -> Arc
    total_weight: Fraction

    @property
    def arcs(self) -> tuple[Arc, ...]:
        return tuple(sorted(self.parent_arc.values(), key=lambda a: a.key))


def _arborescence(g: SignedDigraph, root: int, orientation: str,
                  weight: Callable[[Arc], Fraction] | None) -> Arborescence:
    wf = weight or (lambda a: a.weight)
    arcs = [a for a in g.arcs if a.src != a.dst]
    if orientation == "in":
        arcs.sort(key=lambda a: (a.src, a.dst, a.label))
        ends = [(a.dst, a.src) for a in arcs]
    else:
        arcs.sort(key=lambda a: (a.dst, a.src, a.label))
        ends = [(a.src, a.dst) for a in arcs]
    ws = scale_weights([wf(a) for a in arcs])
    parent = edmonds(g.n, [(s, d, w) for (s, d), w in zip(ends, ws)], root)
    chosen = {v: arcs[parent[v]] for v in range(g.n) if v != root}
    total = sum((Fraction(wf(a)) for a in chosen.values()), Fraction(0))
    return Arborescence(root, orientation, chosen, total)


def min_out_arborescence(g: SignedDigraph, root: int = 0,
                         weight: Callable[[Arc], Fraction] | None = None) -> Arborescence:
    """Every node reached from ``root``; ``weight`` overrides arc weights."""
    return _arborescence(g, root, "out", weight)


def min_in_arborescence(g: SignedDigraph, root: int = 0,
                        weight: Callable[[Arc], Fraction] | None = None) -> Arborescence:
    """Every node reaches ``root``; same algorithm on the reversed arcs."""
    return _arborescence(g, root, "in", weight)
