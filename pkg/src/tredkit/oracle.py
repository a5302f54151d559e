"""Brute-force exact solvers: plain subset enumeration, nothing clever."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .errors import TooLarge
from .graph import Arc, SignedDigraph
from .reduction import ReductionResult, make_result

MAX_FREE_ARCS = 24


def _arc_bits(a: Arc, label_aware: bool) -> list[tuple[int, int]]:
    if not label_aware:
        return [(a.src, 1 << a.dst)]
    if a.label > 0:
        return [(2 * a.src, 1 << (2 * a.dst)), (2 * a.src + 1, 1 << (2 * a.dst + 1))]
    return [(2 * a.src, 1 << (2 * a.dst + 1)), (2 * a.src + 1, 1 << (2 * a.dst))]


def _closure(adj: list[int]) -> list[int]:
    size = len(adj)
    reach = [adj[x] | (1 << x) for x in range(size)]
    for k in range(size):
        bk = 1 << k
        rk = reach[k]
        for x in range(size):
            if reach[x] & bk:
                reach[x] |= rk
    return reach


class _Checker:
    def __init__(self, g: SignedDigraph, label_aware: bool):
        self.size = 2 * g.n if label_aware else g.n
        self.label_aware = label_aware
        self.bits = {a.key: _arc_bits(a, label_aware) for a in g.arcs}
        self.target = self.rows(g.arcs)

    def rows(self, arcs) -> tuple[int, ...]:
        adj = [0] * self.size
        for a in arcs:
            for x, b in self.bits[a.key]:
                adj[x] |= b
        reach = _closure(adj)
        return tuple(reach[::2]) if self.label_aware else tuple(reach)

    def valid(self, arcs) -> bool:
        return self.rows(arcs) == self.target


def exact_min(g: SignedDigraph, label_aware: bool = True, weighted: bool = False,
              max_free: int = MAX_FREE_ARCS) -> ReductionResult:
    """Smallest closure-preserving arc set containing every critical arc.

    Subsets are tried by size, then in lexicographic arc order. With
    ``weighted`` the minimum total weight wins instead (size, then order,
    break ties); this needs every subset, so keep the free arc count small.
    """
    forced = [a for a in g.arcs if a.critical]
    free = [a for a in g.arcs if not a.critical]
    if len(free) > max_free:
        raise TooLarge(f"{len(free)} free arcs exceed the enumeration budget of {max_free}")
    chk = _Checker(g, label_aware)
    best = None
    best_w = None
    for k in range(len(free) + 1):
        for combo in combinations(free, k):
            if weighted:
                w = sum((a.weight for a in combo), Fraction(0))
                if best_w is not None and w >= best_w:
                    continue
            if chk.valid(forced + list(combo)):
                if not weighted:
                    return make_result(g, forced + list(combo), "oracle", label_aware)
                best, best_w = combo, w
    return make_result(g, forced + list(best), "oracle-weighted", label_aware)


def exact_max_deletions(g: SignedDigraph, label_aware: bool = True) -> int:
    return g.m - exact_min(g, label_aware).kept_count
