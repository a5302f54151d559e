"""Approximation algorithms for MIN-ED and its critical, weighted and signed
variants, plus ``reduce_graph``, the single entry point used by the CLI.

Per-component solvers expect a strongly connected graph and work label-blind;
``min_btr`` lifts them to signed graphs.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .arborescence import min_in_arborescence, min_out_arborescence
from .closure import is_strongly_connected, strong_components
from .errors import CycleSearchBudgetExceeded, NotStronglyConnected
from .graph import Arc, SignedDigraph, weight_order
from .lp import matching_lower_bound
from .reduction import (ReductionResult, StrongCertificate, dag_reduce, decompose_solve_combine,
                        make_result, parity_augment, verify_repair)

SOLVERS = ("dag", "fj", "critical2", "kry", "maxed2", "btr")
DEFAULT_C = 12
CYCLE_BUDGET = 10 ** 6


def _require_strong(g: SignedDigraph) -> None:
    if not is_strongly_connected(g):
        raise NotStronglyConnected("solver needs a strongly connected graph")


def _lower_bound(g: SignedDigraph) -> int:
    forced = len(g.critical_arcs)
    if g.n < 2:
        return forced
    return max(matching_lower_bound(g)[0], forced)


def _finish(g: SignedDigraph, kept, algorithm: str, repair: bool, stats: dict | None = None,
            label_aware: bool = False) -> ReductionResult:
    kept = list({a.key: a for a in list(kept) + list(g.critical_arcs)}.values())
    raw = len(kept)
    if repair:
        kept = verify_repair(g, kept, label_aware)
    stats = dict(stats or {}, raw_kept=raw)
    return make_result(g, kept, algorithm, label_aware, lower_bound=_lower_bound(g), stats=stats)


# -- arborescence based ---------------------------------------------------

def fj_weighted_min_ed(g: SignedDigraph, repair: bool = True) -> ReductionResult:
    """Union of a minimum in- and out-arborescence at node 0 (weighted)."""
    _require_strong(g)
    if g.n == 1:
        return _finish(g, [], "fj", repair)
    a_in = min_in_arborescence(g, 0)
    a_out = min_out_arborescence(g, 0)
    stats = {"in_weight": a_in.total_weight, "out_weight": a_out.total_weight}
    return _finish(g, a_in.arcs + a_out.arcs, "fj", repair, stats)


def critical_min_ed_2approx(g: SignedDigraph, repair: bool = True) -> ReductionResult:
    """Two arborescences under 0/1 weights that make critical arcs free."""
    _require_strong(g)
    if g.n == 1:
        return _finish(g, [], "critical2", repair)
    a1 = min_in_arborescence(g, 0, weight=lambda a: 0 if a.critical else 1)
    free = {a.key for a in a1.arcs}
    a2 = min_out_arborescence(g, 0, weight=lambda a: 0 if a.critical or a.key in free else 1)
    return _finish(g, a1.arcs + a2.arcs, "critical2", repair)


# -- cycle contraction ----------------------------------------------------

class _Supernodes:
    """Union-find over nodes plus the arc multigraph between current groups."""

    def __init__(self, g: SignedDigraph):
        self.parent = list(range(g.n))
        self.arcs = [a for a in g.arcs if a.src != a.dst]

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def graph(self) -> dict[int, dict[int, Arc]]:
        """Successor map between groups with one representative arc per pair
        (critical arcs first, then cheapest)."""
        succ: dict[int, dict[int, Arc]] = {}
        for v in range(len(self.parent)):
            succ.setdefault(self.find(v), {})
        for a in self.arcs:
            s, t = self.find(a.src), self.find(a.dst)
            if s == t:
                continue
            cur = succ[s].get(t)
            if cur is None or (not a.critical, weight_order(a)) < (not cur.critical, weight_order(cur)):
                succ[s][t] = a
        return succ

    def contract(self, groups: Sequence[int]) -> None:
        head = min(groups)
        for x in groups:
            self.parent[self.find(x)] = head


def _long_cycle(succ: dict[int, dict[int, Arc]], i: int, budget: int) -> list[int] | None:
    """A simple cycle with at least ``i`` nodes, as a node list, or None.

    Enumerates simple paths from each start ``s`` through larger nodes only,
    so each cycle is seen from its smallest node. ``budget`` caps expansions.
    """
    nodes = sorted(succ)
    spent = 0
    for s in nodes:
        path = [s]
        on_path = {s}
        iters = [iter(sorted(t for t in succ[s] if t > s))]
        while iters:
            nxt = next(iters[-1], None)
            if nxt is None:
                iters.pop()
                on_path.discard(path.pop())
                continue
            spent += 1
            if spent > budget:
                raise CycleSearchBudgetExceeded(f"cycle search exceeded {budget} expansions")
            if nxt in on_path:
                continue
            path.append(nxt)
            on_path.add(nxt)
            if len(path) >= i and s in succ[nxt]:
                return path
            iters.append(iter(sorted(t for t in succ[nxt] if t > s and t not in on_path)))
    return None


def _triangle_or_longer(succ: dict[int, dict[int, Arc]]) -> list[int] | None:
    """A simple cycle of at least 3 nodes, via one BFS per arc."""
    for x in sorted(succ):
        for y in sorted(succ[x]):
            prev = {y: None}
            queue = deque([y])
            while queue:
                v = queue.popleft()
                for w in sorted(succ[v]):
                    if w in prev or (v == y and w == x):
                        continue
                    prev[w] = v
                    if w == x:
                        path = [x]
                        while prev[path[-1]] is not None:
                            path.append(prev[path[-1]])
                        path.reverse()  # y ... x, then x -> y closes it
                        return path[-1:] + path[:-1]
                    queue.append(w)
    return None


def kry_contract(g: SignedDigraph, c: int = DEFAULT_C, repair: bool = True,
                 budget: int = CYCLE_BUDGET) -> ReductionResult:
    """Contract long cycles first, for i = c down to 3; what remains is a
    tree of 2-cycles, kept in full (both directions, one arc each)."""
    if c < 3:
        raise ValueError("c must be at least 3")
    _require_strong(g)
    sn = _Supernodes(g)
    selected: list[Arc] = []
    rounds = 0
    for i in range(c, 2, -1):
        while True:
            succ = sn.graph()
            if len(succ) < i:
                break
            cyc = _long_cycle(succ, i, budget) if i > 3 else _triangle_or_longer(succ)
            if cyc is None:
                break
            rounds += 1
            selected.extend(succ[cyc[j]][cyc[(j + 1) % len(cyc)]] for j in range(len(cyc)))
            sn.contract(cyc)
    residual = [a for targets in sn.graph().values() for a in targets.values()]
    selected.extend(residual)
    stats = {"c": c, "contractions": rounds, "residual_arcs": len(residual)}
    return _finish(g, selected, "kry", repair, stats)


@dataclass(frozen=True)
class PseudonodeMap:
    original: SignedDigraph
    transformed: SignedDigraph
    halves: dict  # original arc key -> (first half key, second half key)

    def restore(self, arcs) -> list[Arc]:
        """Map arcs of the transformed graph back; a critical arc returns
        only when both of its halves are present."""
        keys = {a.key for a in arcs}
        n = self.original.n
        out = []
        for a in arcs:
            if a.src < n and a.dst < n:
                out.append(self.original.arc(a.src, a.dst, a.label))
        for k, (h1, h2) in self.halves.items():
            if h1 in keys and h2 in keys:
                out.append(self.original.arc(*k))
        return sorted(out, key=lambda a: a.key)


def pseudonode_transform(g: SignedDigraph) -> PseudonodeMap:
    """Split each critical arc u->v into u->x->v through a fresh node x."""
    crit = g.critical_arcs
    taken = set(g.names)
    names = list(g.names)
    arcs = [Arc(a.src, a.dst, a.label, a.weight) for a in g.arcs if not a.critical]
    halves = {}
    for k, a in enumerate(crit):
        name = f"_x{k}"
        while name in taken:
            name = "_" + name
        taken.add(name)
        x = len(names)
        names.append(name)
        h1 = Arc(a.src, x, 1, a.weight)
        h2 = Arc(x, a.dst, a.label, Fraction(0))
        arcs += [h1, h2]
        halves[a.key] = (h1.key, h2.key)
    return PseudonodeMap(g, SignedDigraph(names, arcs), halves)


def _strong_bridges(g: SignedDigraph) -> list[Arc]:
    arcs = list(g.arcs)
    cert = StrongCertificate(g.n, arcs)
    return [a for i, a in enumerate(arcs) if a.src != a.dst and not cert.can_remove(i)]


def critical_max_ed_2approx(g: SignedDigraph, repair: bool = True) -> ReductionResult:
    """Necessary arcs, then two 0/1-weighted arborescences over their
    strong components."""
    _require_strong(g)
    if g.n == 1:
        return _finish(g, [], "maxed2", repair, {"necessary": len(g.critical_arcs)})
    needed = {a.key: a for a in g.critical_arcs}
    for a in _strong_bridges(g):
        needed[a.key] = a
    succ = [[] for _ in range(g.n)]
    for a in needed.values():
        succ[a.src].append(a.dst)
    comps = strong_components(g.n, succ)
    stats = {"necessary": len(needed), "f_components": len(comps)}
    if len(comps) == 1:
        return _finish(g, needed.values(), "maxed2", repair, dict(stats, z=-1))
    comp_of = [0] * g.n
    for ci, nodes in enumerate(comps):
        for v in nodes:
            comp_of[v] = ci
    best: dict[tuple, Arc] = {}
    for a in g.arcs:
        c, d = comp_of[a.src], comp_of[a.dst]
        if c == d:
            continue
        k = (c, d, a.label)
        cur = best.get(k)
        rank = (a.key not in needed, weight_order(a))
        if cur is None or rank < (cur.key not in needed, weight_order(cur)):
            best[k] = a
    cg = SignedDigraph(len(comps), [Arc(c, d, lab, Fraction(0 if a.key in needed else 1))
                                    for (c, d, lab), a in best.items()])
    # comps come in topological order of the F-condensation: 0 has no F-arc entering
    a_out = min_out_arborescence(cg, 0)
    out_keys = {a.key for a in a_out.arcs}
    a_in = min_in_arborescence(cg, 0, weight=lambda a: 0 if a.key in out_keys else a.weight)
    chosen = [best[a.key] for a in a_out.arcs + a_in.arcs]
    stats["z"] = cg.m - len(a_out.arcs) - 1
    return _finish(g, list(needed.values()) + chosen, "maxed2", repair, stats)


_BLIND: dict[str, Callable[..., ReductionResult]] = {
    "fj": fj_weighted_min_ed,
    "critical2": critical_min_ed_2approx,
    "kry": kry_contract,
    "maxed2": critical_max_ed_2approx,
}


def _blind_solver(solver: str, c: int, repair: bool) -> Callable[[SignedDigraph], ReductionResult]:
    if solver not in _BLIND:
        raise ValueError(f"unknown component solver {solver!r}; choose from {sorted(_BLIND)}")
    fn = _BLIND[solver]
    if solver == "kry":
        return lambda s: fn(s, c=c, repair=repair)
    return lambda s: fn(s, repair=repair)


def min_btr(g: SignedDigraph, solver: str = "critical2", c: int = DEFAULT_C,
            repair: bool = True) -> ReductionResult:
    """Signed reduction: label-blind solve per strong component, one parity
    arc for double-parity components, exact join across components."""
    blind = _blind_solver(solver, c, repair)

    def per_component(sub: SignedDigraph) -> ReductionResult:
        res = blind(sub)
        arcs, added = parity_augment(sub, res.kept)
        if repair:
            arcs = verify_repair(sub, arcs, True)
        return make_result(sub, arcs, "btr", True, (added,) if added else (), res.lower_bound,
                           {"label_blind_kept": res.kept_count})

    return decompose_solve_combine(g, per_component, label_aware=True, repair=repair,
                                   algorithm=f"btr/{solver}", trust_components=repair)


def reduce_graph(g: SignedDigraph, algo: str = "btr", label_aware: bool = False,
                 c: int = DEFAULT_C, repair: bool = True) -> ReductionResult:
    """Dispatch on a solver name from ``SOLVERS``; arbitrary inputs are split
    into strong components first."""
    if algo not in SOLVERS:
        raise ValueError(f"unknown algorithm {algo!r}; choose from {', '.join(SOLVERS)}")
    if algo == "dag":
        return dag_reduce(g, label_aware)
    if algo == "btr":
        return min_btr(g, "critical2", c, repair)
    if label_aware:
        return min_btr(g, algo, c, repair)
    return decompose_solve_combine(g, _blind_solver(algo, c, repair), label_aware=False,
                                   repair=repair, algorithm=algo, trust_components=repair)
