"""Cut-covering LPs for small graphs, matching lower bound, ratio helper.

The covering LP asks every proper nonempty node set U (optionally: not
containing a root) to receive total weight >= 1 on its entering arcs. It is
solved exactly over the rationals through its dual, which is a packing LP
``max sum y  s.t.  A y <= w, y >= 0`` with an immediately feasible slack
basis; the primal x is read off the final reduced costs.
"""
from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .arborescence import min_out_arborescence
from .closure import is_strongly_connected
from .errors import DomainError, Infeasible, NotStronglyConnected, TooLarge
from .graph import Arc, SignedDigraph

MAX_LP_NODES = 16
MAX_GAP_NODES = 12


@dataclass(frozen=True)
class CutSet:
    U: frozenset[int]
    into: tuple[Arc, ...]
    out_of: tuple[Arc, ...]


def cut(g: SignedDigraph, U: Iterable[int]) -> CutSet:
    U = frozenset(U)
    into = tuple(a for a in g.arcs if a.src not in U and a.dst in U)
    out_of = tuple(a for a in g.arcs if a.src in U and a.dst not in U)
    return CutSet(U, into, out_of)


class Variant(enum.Enum):
    MIN_ED = "min-ed"
    CRITICAL_MIN_ED = "critical-min-ed"
    ROOTED_ARBORESCENCE = "arborescence"


@dataclass(frozen=True)
class LpSolution:
    x: dict  # Arc -> Fraction
    objective: Fraction
    dual_y: dict | None  # frozenset(U) -> Fraction, nonzero entries only
    integral: bool

    @property
    def dual_objective(self) -> Fraction:
        return sum(self.dual_y.values(), Fraction(0)) if self.dual_y else Fraction(0)


def _simplex_max(c: list[Fraction], cols: list[list[tuple[int, Fraction]]], b: list[Fraction]):
    """Bland-rule simplex for ``max c.y, A y <= b, y >= 0`` with b >= 0.

    ``cols`` holds A column-wise as sparse ``(row, value)`` lists. Returns
    ``(objective, y, row_duals)``; raises Infeasible if the LP is unbounded
    (that is, the covering primal has no solution).
    """
    m, k = len(b), len(c)
    width = k + m
    rows = [[Fraction(0)] * width for _ in range(m)]
    for j, col in enumerate(cols):
        for i, v in col:
            rows[i][j] = Fraction(v)
    for i in range(m):
        rows[i][k + i] = Fraction(1)
    rhs = [Fraction(v) for v in b]
    red = [Fraction(v) for v in c] + [Fraction(0)] * m
    obj = Fraction(0)
    basis = [k + i for i in range(m)]
    while True:
        enter = next((j for j in range(width) if red[j] > 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                ratio = rhs[i] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise Infeasible("covering LP has an uncoverable cut")
        piv_row = rows[leave]
        piv = piv_row[enter]
        if piv != 1:
            piv_row[:] = [v / piv for v in piv_row]
            rhs[leave] /= piv
        nz = [j for j, v in enumerate(piv_row) if v]
        for i in range(m):
            if i == leave:
                continue
            f = rows[i][enter]
            if f:
                r = rows[i]
                for j in nz:
                    r[j] -= f * piv_row[j]
                rhs[i] -= f * rhs[leave]
        f = red[enter]
        for j in nz:
            red[j] -= f * piv_row[j]
        obj += f * rhs[leave]
        basis[leave] = enter
    y = [Fraction(0)] * k
    for i, j in enumerate(basis):
        if j < k:
            y[j] = rhs[i]
    duals = [-red[k + i] for i in range(m)]
    return obj, y, duals


def solve_lp_small(g: SignedDigraph, variant: Variant | str = Variant.MIN_ED,
                   root: int = 0) -> LpSolution:
    """Exact optimum of the cut-covering LP by enumerating all 2^n - 2 cuts."""
    variant = Variant(variant)
    n = g.n
    if n > MAX_LP_NODES:
        raise TooLarge(f"{n} nodes exceed the LP enumeration limit of {MAX_LP_NODES}")
    arcs = list(g.arcs)
    if variant is Variant.ROOTED_ARBORESCENCE:
        w = [a.weight for a in arcs]
    else:
        w = [Fraction(1)] * len(arcs)
    subsets: list[int] = []
    cols: list[list[tuple[int, Fraction]]] = []
    for mask in range(1, (1 << n) - 1):
        if variant is Variant.ROOTED_ARBORESCENCE and mask >> root & 1:
            continue
        col = [(i, Fraction(1)) for i, a in enumerate(arcs)
               if not mask >> a.src & 1 and mask >> a.dst & 1]
        subsets.append(mask)
        cols.append(col)
    c = [Fraction(1)] * len(cols)
    if variant is Variant.CRITICAL_MIN_ED:
        for i, a in enumerate(arcs):
            if a.critical:
                cols.append([(i, Fraction(1))])
                c.append(Fraction(1))
    obj, y, duals = _simplex_max(c, cols, w)
    x = {a: min(d, Fraction(1)) if variant is not Variant.ROOTED_ARBORESCENCE else d
         for a, d in zip(arcs, duals)}
    dual_y = {frozenset(v for v in range(n) if mask >> v & 1): val
              for mask, val in zip(subsets, y) if val}
    integral = all(v.denominator == 1 for v in x.values())
    primal = sum((wi * x[a] for wi, a in zip(w, arcs)), Fraction(0))
    # strong duality; a mismatch means a pivoting bug, not a property of g
    assert primal == obj, (primal, obj)
    return LpSolution(x, obj, dual_y, integral)


def integrality_gap(g: SignedDigraph, variant: Variant | str = Variant.MIN_ED,
                    root: int = 0) -> Fraction:
    """Integral optimum over fractional optimum (a minimization ratio)."""
    from .oracle import exact_min

    variant = Variant(variant)
    if g.n > MAX_GAP_NODES:
        raise TooLarge(f"{g.n} nodes exceed the integrality-gap limit of {MAX_GAP_NODES}")
    lp = solve_lp_small(g, variant, root)
    if variant is Variant.ROOTED_ARBORESCENCE:
        integral = min_out_arborescence(g, root).total_weight
    elif variant is Variant.CRITICAL_MIN_ED:
        integral = Fraction(exact_min(g.unsigned(), label_aware=False).kept_count)
    else:
        integral = Fraction(exact_min(g.unsigned().without_critical(), label_aware=False).kept_count)
    if lp.objective == 0:
        return Fraction(1)
    return integral / lp.objective


def hopcroft_karp(n_left: int, adj: Sequence[Sequence[int]]) -> list[int]:
    """Maximum bipartite matching; returns ``match_left`` (-1 = unmatched).

    ``adj[u]`` lists right vertices; right vertices are ``0..max+1``.
    """
    n_right = 1 + max((v for vs in adj for v in vs), default=-1)
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    inf = math.inf
    while True:
        dist = [inf] * n_left
        queue = deque()
        for u in range(n_left):
            if match_l[u] < 0:
                dist[u] = 0
                queue.append(u)
        found = False
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                w = match_r[v]
                if w < 0:
                    found = True
                elif dist[w] == inf:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if not found:
            return match_l
        ptr = [0] * n_left
        for s in range(n_left):
            if match_l[s] >= 0:
                continue
            # iterative DFS along layered augmenting paths
            stack = [s]
            while stack:
                u = stack[-1]
                if ptr[u] >= len(adj[u]):
                    dist[u] = inf
                    stack.pop()
                    continue
                v = adj[u][ptr[u]]
                ptr[u] += 1
                w = match_r[v]
                if w < 0:
                    # augment along the stack
                    for x in reversed(stack):
                        prev = match_l[x]
                        match_l[x] = v
                        match_r[v] = x
                        v = prev
                    break
                if dist[w] == dist[u] + 1:
                    stack.append(w)


def matching_lower_bound(g: SignedDigraph) -> tuple[int, list[Arc]]:
    """Fewest arcs giving every node an outgoing and an incoming arc.

    That is a minimum edge cover of the tail-copy/head-copy bipartite graph,
    of size 2n - (maximum matching), and no strongly connected spanning
    subgraph can use fewer arcs.
    """
    if g.n < 2 or not is_strongly_connected(g):
        raise NotStronglyConnected("matching bound needs a strongly connected graph with n >= 2")
    arcs = [a for a in g.arcs if a.src != a.dst]
    adj: list[list[int]] = [[] for _ in range(g.n)]
    arc_of: dict[tuple[int, int], Arc] = {}
    for a in arcs:
        if (a.src, a.dst) not in arc_of:
            arc_of[(a.src, a.dst)] = a
            adj[a.src].append(a.dst)
    match_l = hopcroft_karp(g.n, adj)
    cover = [arc_of[(u, v)] for u, v in enumerate(match_l) if v >= 0]
    has_in = [False] * g.n
    for v in match_l:
        if v >= 0:
            has_in[v] = True
    for u in range(g.n):
        if match_l[u] < 0:
            cover.append(g.out_arcs[u][0] if g.out_arcs[u][0].dst != u else
                         next(a for a in g.out_arcs[u] if a.dst != u))
    for v in range(g.n):
        if not has_in[v]:
            cover.append(next(a for a in g.in_arcs[v] if a.src != v))
    assert len(cover) == 2 * g.n - sum(1 for v in match_l if v >= 0)
    return len(cover), sorted(cover, key=lambda a: a.key)


def ratio_report(total_arcs: int, opt_kept: int, alg_kept: int) -> tuple[Fraction, Fraction | float]:
    """Approximation ratio of one solution read as MIN-ED and as MAX-ED.

    The second ratio is ``inf`` when the algorithm deletes nothing.
    """
    if not (0 <= opt_kept <= alg_kept <= total_arcs) or opt_kept == 0:
        raise DomainError("need 0 < opt_kept <= alg_kept <= total_arcs")
    min_ratio = Fraction(alg_kept, opt_kept)
    if alg_kept == total_arcs:
        max_ratio = Fraction(1) if opt_kept == total_arcs else math.inf
    else:
        max_ratio = Fraction(total_arcs - opt_kept, total_arcs - alg_kept)
    return min_ratio, max_ratio
