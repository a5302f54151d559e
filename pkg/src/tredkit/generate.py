"""Seeded random instances: strongly connected signed graphs and evidence files."""
from __future__ import annotations

import random

from .graph import Arc, SignedDigraph


def random_strong_graph(n: int, m: int, seed: int = 0, neg_frac: float = 0.2,
                        crit_frac: float = 0.1) -> SignedDigraph:
    """A random Hamiltonian cycle plus ``m - n`` further distinct arcs.

    Labels and critical flags are drawn independently per arc. Node names are
    ``v0 .. v{n-1}``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not n <= m <= n * n:
        raise ValueError("need n <= m <= n*n")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    pairs = {(order[i], order[(i + 1) % n]) for i in range(n)}
    if n == 1:
        pairs = {(0, 0)}
    while len(pairs) < m:
        pairs.add((rng.randrange(n), rng.randrange(n)))
    arcs = []
    for u, v in sorted(pairs):
        label = -1 if rng.random() < neg_frac else 1
        arcs.append(Arc(u, v, label, 1, rng.random() < crit_frac))
    return SignedDigraph([f"v{i}" for i in range(n)], arcs)


def random_evidence(lines: int, seed: int = 0, nodes: int | None = None) -> str:
    """Synthetic evidence text mixing all four statement kinds."""
    rng = random.Random(seed)
    k = nodes or max(4, lines // 2)
    names = [f"G{i}" for i in range(k)]
    out = [f"# synthetic evidence, seed {seed}"]
    ops = {"direct": ("->", "-|"), "double": ("=>", "=|"), "cat": ("=cat=>", "=cat|"),
           "up": ("=up=>", "=up|")}
    kinds = ["direct"] * 6 + ["double"] * 2 + ["cat", "up"]
    for _ in range(lines):
        kind = rng.choice(kinds)
        a, b, c = rng.sample(names, 3)
        inner = rng.choice(("->", "->", "-|"))
        if kind == "direct":
            out.append(f"{a} {inner} {b}")
        else:
            outer = ops[kind][rng.random() < 0.25]
            out.append(f"{c} {outer} ({a} {inner} {b})")
    return "\n".join(out) + "\n"
