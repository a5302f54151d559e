"""Exact reduction on DAGs, the strong-component pipeline, parity
augmentation and the verify-and-repair pass."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Collection, Iterable, Sequence

from .closure import (Implier, check_subset, closure_equal, classify_parity, potentials,
                      scc_condense, strong_components)
from .errors import MissingWitness, NoArborescence, NotAcyclic
from .graph import Arc, SignedDigraph, arc_order, weight_order


@dataclass(frozen=True)
class ReductionResult:
    kept: tuple[Arc, ...]
    deleted: tuple[Arc, ...]
    algorithm: str
    verified: bool
    augmentation: tuple[Arc, ...] = ()
    lower_bound: int | None = None
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def kept_count(self) -> int:
        return len(self.kept)

    @property
    def total_count(self) -> int:
        return len(self.kept) + len(self.deleted)

    @property
    def deleted_count(self) -> int:
        return len(self.deleted)

    @property
    def kept_weight(self) -> Fraction:
        return sum((a.weight for a in self.kept), Fraction(0))

    @property
    def redundancy(self) -> Fraction | None:
        if not self.total_count:
            return None
        return 1 - Fraction(self.kept_count, self.total_count)

    def kept_graph(self, g: SignedDigraph) -> SignedDigraph:
        return g.subgraph(self.kept)


def make_result(g: SignedDigraph, kept: Iterable[Arc], algorithm: str, label_aware: bool,
                augmentation: Sequence[Arc] = (), lower_bound: int | None = None,
                stats: dict | None = None) -> ReductionResult:
    keys = {a.key for a in kept}
    kept_t = tuple(a for a in g.arcs if a.key in keys)
    deleted = tuple(a for a in g.arcs if a.key not in keys)
    verified = closure_equal(g, kept_t, label_aware) and all(a.key in keys for a in g.arcs if a.critical)
    if lower_bound is not None:
        lower_bound = min(lower_bound, len(kept_t)) if verified else lower_bound
    return ReductionResult(kept_t, deleted, algorithm, verified, tuple(augmentation),
                           lower_bound, dict(stats or {}, label_aware=label_aware))


# -- exact greedy on an acyclic (condensed) graph ---------------------------

def _flip(bits: int, even: int) -> int:
    return ((bits & even) << 1) | ((bits >> 1) & even)


def _greedy_acyclic(ncomp: int, groups: dict, double: Sequence[bool]) -> list[Arc]:
    """Keep one arc per irreplaceable group of a topologically indexed DAG.

    ``groups`` maps ``(c, d, label)`` (c < d) to the original arcs realizing
    it. A double component passes both parities, so groups touching one must
    already use label +1. A group is dropped when the other groups leaving c
    reach d with every parity it carries. Returns the representatives of
    the kept non-critical groups.
    """
    even = 0
    for c in range(ncomp):
        even |= 1 << (2 * c)
    out: list[list[tuple[int, int]]] = [[] for _ in range(ncomp)]
    for c, d, lab in groups:
        out[c].append((d, lab))
    reach = [0] * ncomp
    for c in range(ncomp - 1, -1, -1):
        r = 1 << (2 * c)
        for d, lab in out[c]:
            r |= reach[d] if lab > 0 else _flip(reach[d], even)
        if double[c]:
            r |= _flip(r, even)
        reach[c] = r

    chosen = []
    for (c, d, lab), arcs in sorted(groups.items()):
        if any(a.critical for a in arcs):
            continue
        need = 3 if (double[c] or double[d]) else (1 if lab > 0 else 2)
        have = 0
        for w, l2 in out[c]:
            if (w, l2) == (d, lab):
                continue
            r = reach[w] if l2 > 0 else _flip(reach[w], even)
            have |= (r >> (2 * d)) & 3
        if double[c] and have:
            have = 3
        if need & ~have:
            chosen.append(min(arcs, key=weight_order))
    return chosen


def _group_key_arc(rep_groups: dict, key, arc: Arc) -> None:
    rep_groups.setdefault(key, []).append(arc)


def dag_reduce(g: SignedDigraph, label_aware: bool = False) -> ReductionResult:
    comps = strong_components(g.n, [[a.dst for a in g.out_arcs[v]] for v in range(g.n)])
    if len(comps) != g.n or any(a.src == a.dst for a in g.arcs):
        raise NotAcyclic("graph has a directed cycle")
    pos = [0] * g.n
    for i, (v,) in enumerate(comps):
        pos[v] = i
    groups: dict = {}
    for a in g.arcs:
        _group_key_arc(groups, (pos[a.src], pos[a.dst], a.label if label_aware else 1), a)
    kept = list(g.critical_arcs) + _greedy_acyclic(g.n, groups, [False] * g.n)
    return make_result(g, kept, "dag", label_aware)


# -- strong-component pipeline ---------------------------------------------

def decompose_solve_combine(g: SignedDigraph, scc_solver: Callable[[SignedDigraph], ReductionResult],
                            label_aware: bool = True, repair: bool = True,
                            algorithm: str = "pipeline",
                            trust_components: bool = False) -> ReductionResult:
    """Solve each strong component with ``scc_solver`` and join them with an
    exact reduction of the parity-annotated component DAG.

    A single-parity component behaves like one node once arcs are re-signed
    by node potentials; a double-parity one passes both parities. With those
    two facts the inter-component choice is exact.

    ``trust_components`` says the solver already returns irredundant arc
    sets, so the final repair only prunes arcs between components.
    """
    cond = scc_condense(g)
    ncomp = cond.size
    kept: dict = {a.key: a for a in g.critical_arcs}
    augmentation: list[Arc] = []
    pot = [1] * g.n
    double = [False] * ncomp
    bound = 0
    have_bound = True
    blind_kept = 0
    for ci, nodes in enumerate(cond.components):
        inner = [a for v in nodes for a in g.out_arcs[v] if cond.component_of[a.dst] == ci]
        if label_aware:
            p, dbl = potentials(g.n, nodes, inner)
            for v in nodes:
                pot[v] = p[v]
            double[ci] = dbl
        if len(nodes) == 1:
            for a in inner:
                if a.critical or (label_aware and a.label < 0):
                    kept[a.key] = a
                    bound += 1
                    blind_kept += 1
            continue
        sub, back = g.induced(nodes)
        res = scc_solver(sub)
        for a in res.kept:
            ga = g.arc(back[a.src], back[a.dst], a.label)
            kept[ga.key] = ga
        augmentation.extend(g.arc(back[a.src], back[a.dst], a.label) for a in res.augmentation)
        if res.lower_bound is None:
            have_bound = False
        else:
            bound += res.lower_bound
        blind_kept += res.stats.get("label_blind_kept", res.kept_count)

    groups: dict = {}
    for a in g.arcs:
        c, d = cond.component_of[a.src], cond.component_of[a.dst]
        if c == d:
            continue
        if not label_aware or double[c] or double[d]:
            lab = 1
        else:
            lab = pot[a.src] * a.label * pot[a.dst]
        _group_key_arc(groups, (c, d, lab), a)
    inter = _greedy_acyclic(ncomp, groups, double)
    n_inter = sum(1 for grp in groups.values() for a in grp if a.critical) + len(inter)
    for a in inter:
        kept[a.key] = a

    arcs = list(kept.values())
    if repair:
        settled = range(ncomp) if trust_components else ()
        arcs = verify_repair(g, arcs, label_aware, settled)
    stats = {"components": ncomp, "label_blind_kept": blind_kept + n_inter}
    return make_result(g, arcs, algorithm, label_aware, augmentation,
                       bound + n_inter if have_bound else None, stats)


def parity_augment(g: SignedDigraph, kept: Sequence[Arc]) -> tuple[list[Arc], Arc | None]:
    """Make a label-blind solution of a strongly connected graph parity-valid.

    Returns the (possibly extended) arc list and the added arc, if any.
    """
    cls = classify_parity(g)
    kept = check_subset(g, kept)
    if not cls.double:
        return list(kept), None
    out: list[list[Arc]] = [[] for _ in range(g.n)]
    for a in sorted(kept, key=arc_order):
        out[a.src].append(a)
    label = {0: 1}
    stack = [0]
    while stack:
        v = stack.pop()
        for a in out[v]:
            if a.dst not in label:
                label[a.dst] = label[v] * a.label
                stack.append(a.dst)
    if len(label) != g.n:
        raise NoArborescence("kept arcs do not reach every node from the root")
    if any(label[a.src] * label[a.dst] != a.label for a in kept):
        return list(kept), None
    for a in g.arcs:
        if label[a.src] * label[a.dst] != a.label:
            return list(kept) + [a], a
    raise MissingWitness("double-parity graph without a violating arc")


# -- verify and repair ------------------------------------------------------

def verify_repair(g: SignedDigraph, kept: Iterable[Arc], label_aware: bool = True,
                  settled: Collection[int] = ()) -> list[Arc]:
    """Return a closure-preserving, irredundant arc set near ``kept``.

    Missing closure is restored by re-adding arcs cheapest first; then arcs
    are dropped in reverse insertion order while closure allows it. Arcs
    inside the strong components listed in ``settled`` (indices as in
    ``scc_condense``) are left alone unless something had to be re-added.
    """
    kept = check_subset(g, kept)
    keys = {a.key for a in kept}
    order = sorted(kept, key=weight_order)
    for a in g.critical_arcs:
        if a.key not in keys:
            order.append(a)
            keys.add(a.key)
    imp = Implier(g.n, order, label_aware)
    rest = [a for a in g.arcs if a.key not in keys]
    if not all(imp.implies(a.src, a.dst, a.label) for a in rest):
        settled = ()
        for a in sorted(rest, key=weight_order):
            if not imp.implies(a.src, a.dst, a.label):
                order.append(a)
                keys.add(a.key)
                imp = Implier(g.n, order, label_aware)
    return _prune(g, order, label_aware, set(settled))


def _prune(g: SignedDigraph, order: list[Arc], label_aware: bool, settled: set) -> list[Arc]:
    cond = scc_condense(g)
    comp = cond.component_of
    by_comp: dict[int, list[Arc]] = {}
    inter: list[Arc] = []
    for a in order:
        if comp[a.src] == comp[a.dst]:
            by_comp.setdefault(comp[a.src], []).append(a)
        else:
            inter.append(a)
    result: list[Arc] = []
    for ci, arcs in by_comp.items():
        nodes = cond.components[ci]
        if ci in settled:
            result.extend(arcs)
            continue
        if len(nodes) == 1:
            result.extend(a for a in arcs if a.critical or (label_aware and a.label < 0))
            continue
        double = False
        if label_aware:
            inner = [a for v in nodes for a in g.out_arcs[v] if comp[a.dst] == ci]
            double = potentials(g.n, nodes, inner)[1]
        result.extend(_prune_strong(nodes, arcs, label_aware and double))
    if inter:
        result.extend(_prune_inter(g.n, result, inter, label_aware))
    return sorted(result, key=arc_order)


def _prune_inter(n: int, intra: list[Arc], inter: list[Arc], label_aware: bool) -> list[Arc]:
    out: list[dict] = [dict() for _ in range(n)]
    inn: list[dict] = [dict() for _ in range(n)]
    for a in intra + inter:
        out[a.src][a.key] = a
        inn[a.dst][a.key] = a
    kept = []
    for a in reversed(inter):
        if not a.critical:
            del out[a.src][a.key]
            del inn[a.dst][a.key]
            if walk_exists(out, inn, a.src, a.dst, a.label, label_aware):
                continue
            out[a.src][a.key] = a
            inn[a.dst][a.key] = a
        kept.append(a)
    return kept


def walk_exists(out: Sequence[dict], inn: Sequence[dict], u: int, v: int, p: int,
                label_aware: bool) -> bool:
    """Bidirectional search for a u -> v walk (of parity p when label-aware)."""
    if label_aware:
        start, goal = (u, 1), (v, p)
    else:
        start, goal = (u, 1), (v, 1)
    if start == goal:
        return True
    fwd, bwd = {start}, {goal}
    ff, bf = [start], [goal]
    while ff and bf:
        if len(ff) <= len(bf):
            nxt = []
            for x, q in ff:
                for a in out[x].values():
                    t = (a.dst, q * a.label if label_aware else 1)
                    if t in bwd:
                        return True
                    if t not in fwd:
                        fwd.add(t)
                        nxt.append(t)
            ff = nxt
        else:
            nxt = []
            for y, q in bf:
                for a in inn[y].values():
                    t = (a.src, q * a.label if label_aware else 1)
                    if t in fwd:
                        return True
                    if t not in bwd:
                        bwd.add(t)
                        nxt.append(t)
            bf = nxt
    return False


class StrongCertificate:
    """An out- and an in-arborescence from one root inside a strongly
    connected arc set, kept up to date while arcs are deleted.

    Deleting an arc outside both trees never breaks strong connectivity. For
    a tree arc only the subtree hanging below it must be re-attached, which
    is a search confined to that subtree. With ``track_parity`` the set also
    has to keep a negative closed walk, i.e. some arc violating the
    out-tree's node signs.
    """

    def __init__(self, k: int, arcs: Sequence[Arc], track_parity: bool = False):
        self.k = k
        self.arcs = arcs
        self.track = track_parity
        self.out: list[list[int]] = [[] for _ in range(k)]
        self.inn: list[list[int]] = [[] for _ in range(k)]
        for i in sorted(range(len(arcs)), key=lambda i: arcs[i].key):
            a = arcs[i]
            self.out[a.src].append(i)
            self.inn[a.dst].append(i)
        self.alive = [True] * len(arcs)
        self.par_out = self._tree(True)
        self.par_in = self._tree(False)
        self.kids_out: list[set[int]] = [set() for _ in range(k)]
        self.kids_in: list[set[int]] = [set() for _ in range(k)]
        for v in range(1, k):
            self.kids_out[arcs[self.par_out[v]].src].add(v)
            self.kids_in[arcs[self.par_in[v]].dst].add(v)
        self.pot = [1] * k
        self.viol: set[int] = set()
        if track_parity:
            for v, _ in self._bfs_order:
                if v:
                    a = arcs[self.par_out[v]]
                    self.pot[v] = self.pot[a.src] * a.label
            self.viol = {i for i, a in enumerate(arcs) if self._violates(a)}

    def _violates(self, a: Arc) -> bool:
        return self.pot[a.src] * a.label != self.pot[a.dst]

    def _tree(self, forward: bool) -> list[int]:
        par = [-1] * self.k
        seen = [False] * self.k
        seen[0] = True
        queue = [0]
        order = [(0, -1)]
        for v in queue:
            for i in (self.out[v] if forward else self.inn[v]):
                a = self.arcs[i]
                w = a.dst if forward else a.src
                if not seen[w]:
                    seen[w] = True
                    par[w] = i
                    queue.append(w)
                    order.append((w, i))
        if not all(seen):
            raise ValueError("arc set is not strongly connected")
        if forward:
            self._bfs_order = order
        return par

    @staticmethod
    def _subtree(kids: list[set[int]], v: int) -> set[int]:
        seen = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in kids[x]:
                seen.add(y)
                stack.append(y)
        return seen

    def _rehang(self, sub: set[int], skip: int, forward: bool) -> list[tuple[int, int]] | None:
        arcs, alive = self.arcs, self.alive
        into = self.inn if forward else self.out
        onward = self.out if forward else self.inn
        parent: dict[int, int] = {}
        queue: list[int] = []
        for y in sorted(sub):
            for i in into[y]:
                if i == skip or not alive[i]:
                    continue
                x = arcs[i].src if forward else arcs[i].dst
                if x not in sub:
                    parent[y] = i
                    queue.append(y)
                    break
        for y in queue:
            for i in onward[y]:
                if i == skip or not alive[i]:
                    continue
                z = arcs[i].dst if forward else arcs[i].src
                if z in sub and z not in parent:
                    parent[z] = i
                    queue.append(z)
        if len(parent) != len(sub):
            return None
        return [(y, parent[y]) for y in queue]

    def can_remove(self, e: int) -> bool:
        return self._attempt(e, commit=False)

    def remove(self, e: int) -> bool:
        """Delete arc ``e`` if the certificate survives; report success."""
        return self._attempt(e, commit=True)

    def _attempt(self, e: int, commit: bool) -> bool:
        a = self.arcs[e]
        new_out = new_in = None
        if a.src != a.dst and self.par_out[a.dst] == e:
            new_out = self._rehang(self._subtree(self.kids_out, a.dst), e, True)
            if new_out is None:
                return False
        if a.src != a.dst and self.par_in[a.src] == e:
            new_in = self._rehang(self._subtree(self.kids_in, a.src), e, False)
            if new_in is None:
                return False
        new_pot: dict[int, int] = {}
        touched: set[int] = set()
        if self.track:
            count = len(self.viol) - (e in self.viol)
            if new_out:
                for y, i in new_out:
                    b = self.arcs[i]
                    new_pot[y] = new_pot.get(b.src, self.pot[b.src]) * b.label
                for y, _ in new_out:
                    touched.update(self.out[y])
                    touched.update(self.inn[y])
                touched.discard(e)
                for i in touched:
                    if not self.alive[i]:
                        continue
                    b = self.arcs[i]
                    now = new_pot.get(b.src, self.pot[b.src]) * b.label != new_pot.get(b.dst, self.pot[b.dst])
                    count += now - (i in self.viol)
            if count <= 0:
                return False
        if not commit:
            return True
        if new_out:
            self._rewire(new_out, self.par_out, self.kids_out, True)
            for y, p in new_pot.items():
                self.pot[y] = p
            for i in touched:
                if self.alive[i] and self._violates(self.arcs[i]):
                    self.viol.add(i)
                else:
                    self.viol.discard(i)
        if new_in:
            self._rewire(new_in, self.par_in, self.kids_in, False)
        self.alive[e] = False
        self.viol.discard(e)
        self.out[a.src].remove(e)
        self.inn[a.dst].remove(e)
        return True

    def _rewire(self, pairs, par, kids, forward: bool) -> None:
        for y, _ in pairs:
            b = self.arcs[par[y]]
            kids[b.src if forward else b.dst].discard(y)
        for y, i in pairs:
            par[y] = i
            b = self.arcs[i]
            kids[b.src if forward else b.dst].add(y)

    def remaining(self) -> list[Arc]:
        return [a for a, ok in zip(self.arcs, self.alive) if ok]


def _prune_strong(nodes: Sequence[int], arcs: list[Arc], need_negative_cycle: bool) -> list[Arc]:
    local = {v: i for i, v in enumerate(nodes)}
    loc = [Arc(local[a.src], local[a.dst], a.label, a.weight, a.critical) for a in arcs]
    cert = StrongCertificate(len(nodes), loc, need_negative_cycle)
    for i in range(len(loc) - 1, -1, -1):
        if not loc[i].critical:
            cert.remove(i)
    return [arcs[i] for i in range(len(arcs)) if cert.alive[i]]
