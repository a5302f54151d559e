"""Independent brute-force references used by the tests.

Nothing here imports the algorithms under test; arcs are plain tuples
``(src, dst, label)`` or objects with those attributes.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product


def _t(a):
    return (a.src, a.dst, a.label) if hasattr(a, "src") else tuple(a[:3])


def closure(n, arcs, label_aware=True):
    """Walk closure via Warshall on the doubled graph, as a set of triples."""
    size = 2 * n
    reach = [[False] * size for _ in range(size)]
    for x in range(size):
        reach[x][x] = True
    for a in arcs:
        u, v, lab = _t(a)
        if not label_aware:
            lab = 1
        for p in (0, 1):
            q = p if lab > 0 else 1 - p
            reach[2 * u + p][2 * v + q] = True
    for k in range(size):
        rk = reach[k]
        for i in range(size):
            if reach[i][k]:
                ri = reach[i]
                for j in range(size):
                    if rk[j]:
                        ri[j] = True
    out = set()
    for u in range(n):
        for v in range(n):
            for q, sign in ((0, 1), (1, -1)):
                if reach[2 * u][2 * v + q]:
                    out.add((u, v, sign if label_aware else 1))
    return out


def same_closure(n, all_arcs, kept, label_aware=True):
    return closure(n, kept, label_aware) == closure(n, all_arcs, label_aware)


def is_irredundant(n, all_arcs, kept, label_aware=True, critical=()):
    crit = {_t(a) for a in critical}
    kept = [_t(a) for a in kept]
    target = closure(n, all_arcs, label_aware)
    for a in kept:
        if a in crit:
            continue
        rest = [b for b in kept if b != a]
        if closure(n, rest, label_aware) == target:
            return False
    return True


def brute_min(n, arcs, label_aware=True, critical=()):
    """Fewest arcs (containing ``critical``) with the closure of ``arcs``."""
    arcs = [_t(a) for a in arcs]
    crit = [a for a in arcs if a in {_t(c) for c in critical}]
    free = [a for a in arcs if a not in crit]
    target = closure(n, arcs, label_aware)
    for k in range(len(free) + 1):
        for combo in combinations(free, k):
            if closure(n, crit + list(combo), label_aware) == target:
                return len(crit) + k
    raise AssertionError("unreachable")


def strongly_connected(n, arcs):
    pairs = {(u, v) for u, v, _ in closure(n, arcs, False)}
    return all((u, v) in pairs for u in range(n) for v in range(n))


def brute_arborescence(n, warcs, root):
    """Minimum out-arborescence weight by trying every parent choice.

    ``warcs`` are ``(src, dst, weight)``; returns None if none exists.
    """
    into = {v: [(u, w) for u, d, w in warcs if d == v and u != v] for v in range(n) if v != root}
    best = None
    others = sorted(into)
    for choice in product(*(into[v] for v in others)):
        parent = {v: c[0] for v, c in zip(others, choice)}
        ok = True
        for v in others:
            seen = set()
            x = v
            while x != root:
                if x in seen:
                    ok = False
                    break
                seen.add(x)
                x = parent[x]
            if not ok:
                break
        if ok:
            w = sum((Fraction(c[1]) for c in choice), Fraction(0))
            if best is None or w < best:
                best = w
    return best


def simple_cycle_parities(n, arcs):
    """Label products over all simple cycles (including self-loops)."""
    lab: dict = {}
    for a in arcs:
        u, v, s = _t(a)
        lab.setdefault((u, v), set()).add(s)
    found = set()
    for k in range(1, n + 1):
        for nodes in permutations(range(n), k):
            if nodes[0] != min(nodes):
                continue
            steps = [(nodes[i], nodes[(i + 1) % k]) for i in range(k)]
            if not all(s in lab for s in steps):
                continue
            for signs in product(*(sorted(lab[s]) for s in steps)):
                p = 1
                for s in signs:
                    p *= s
                found.add(p)
    return found


def canonical(n, pairs):
    """Isomorphism-invariant key of an unlabeled digraph (brute force)."""
    return min(tuple(sorted((perm[u], perm[v]) for u, v in pairs))
               for perm in permutations(range(n)))
