"""Network synthesis from interaction evidence, and the redundancy measure R.

Evidence grammar, one statement per line, ``#`` comments::

    A -> B                 A promotes B        (A -| B: inhibits)
    C => (A -> B)          C promotes the A->B process   (=| : inhibits it)
    C =cat=> (A -> B)      catalytic: C acts on B directly
    C =up=> (A -> B)       upstream: C acts on A
"""
from __future__ import annotations

import enum
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .approx import min_btr
from .errors import CycleSearchBudgetExceeded, EmptyGraph, ParseError
from .graph import GraphBuilder, SignedDigraph
from .oracle import exact_min
from .reduction import ReductionResult

log = logging.getLogger(__name__)

INNER_OPS = {"->": 1, "-|": -1}


class EvidenceKind(enum.Enum):
    DIRECT = "direct"
    DOUBLE_CAUSAL = "double-causal"
    CATALYTIC = "catalytic"
    UPSTREAM_DIRECT = "upstream-direct"


OUTER_OPS = {
    "=>": (EvidenceKind.DOUBLE_CAUSAL, 1), "=|": (EvidenceKind.DOUBLE_CAUSAL, -1),
    "=cat=>": (EvidenceKind.CATALYTIC, 1), "=cat|": (EvidenceKind.CATALYTIC, -1),
    "=up=>": (EvidenceKind.UPSTREAM_DIRECT, 1), "=up|": (EvidenceKind.UPSTREAM_DIRECT, -1),
}


@dataclass(frozen=True)
class Evidence:
    kind: EvidenceKind
    source: str
    target: str
    sign_inner: int
    actor: str | None = None
    sign_outer: int | None = None
    line: int = field(default=0, compare=False)

    def __str__(self):
        inner = f"{self.source} {'->' if self.sign_inner > 0 else '-|'} {self.target}"
        if self.kind is EvidenceKind.DIRECT:
            return inner
        op = next(o for o, (k, s) in OUTER_OPS.items() if k is self.kind and s == self.sign_outer)
        return f"{self.actor} {op} ({inner})"


@dataclass(frozen=True)
class PseudoNode:
    id: int
    origin: Evidence


_OP_RE = re.compile(r"(=cat=>|=cat\||=up=>|=up\||=>|=\||->|-\||[()])")


def _tokens(line: str) -> list[str]:
    # operators split tokens even without surrounding spaces
    out = []
    for piece in _OP_RE.split(line):
        out.extend(piece.split())
    return out


def _parse_line(toks: list[str], lineno: int) -> Evidence:
    if toks[0] in INNER_OPS or toks[0] in OUTER_OPS or toks[0] in ("(", ")"):
        raise ParseError(lineno, "missing source")
    if len(toks) < 2:
        raise ParseError(lineno, "missing operator")
    op = toks[1]
    if op in INNER_OPS:
        if len(toks) < 3:
            raise ParseError(lineno, "missing target")
        if len(toks) > 3:
            raise ParseError(lineno, f"unexpected token {toks[3]!r}")
        if toks[2] in ("(", ")") or toks[2] in INNER_OPS or toks[2] in OUTER_OPS:
            raise ParseError(lineno, "missing target")
        return Evidence(EvidenceKind.DIRECT, toks[0], toks[2], INNER_OPS[op], line=lineno)
    if op not in OUTER_OPS:
        raise ParseError(lineno, f"unknown operator {op!r}")
    kind, outer = OUTER_OPS[op]
    body = toks[2:]
    if not body or body[0] != "(":
        raise ParseError(lineno, "expected '(' after " + op)
    if body[-1] != ")" or body.count("(") != 1 or body.count(")") != 1:
        raise ParseError(lineno, "unbalanced parentheses")
    inner = body[1:-1]
    if not inner or inner[0] in INNER_OPS:
        raise ParseError(lineno, "missing source")
    if len(inner) < 2 or inner[1] not in INNER_OPS:
        raise ParseError(lineno, "expected '->' or '-|' inside parentheses")
    if len(inner) < 3:
        raise ParseError(lineno, "missing target")
    if len(inner) > 3:
        raise ParseError(lineno, f"unexpected token {inner[3]!r}")
    if inner[0] == inner[2]:
        raise ParseError(lineno, "source and target must differ")
    return Evidence(kind, inner[0], inner[2], INNER_OPS[inner[1]], toks[0], outer, lineno)


def parse_evidence(text: str) -> list[Evidence]:
    """Parse evidence text; repeated statements are kept once (first line wins)."""
    out: list[Evidence] = []
    seen: set[Evidence] = set()
    signs: dict[tuple, tuple[int, int | None, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        ev = _parse_line(_tokens(line), lineno)
        if ev in seen:
            continue
        seen.add(ev)
        out.append(ev)
        who = (ev.kind, ev.actor, ev.source, ev.target)
        prev = signs.setdefault(who, (ev.sign_inner, ev.sign_outer, lineno))
        if prev[:2] != (ev.sign_inner, ev.sign_outer):
            log.warning("line %d: %s conflicts with line %d; both kept", lineno, ev, prev[2])
    return out


def _build(evidence: list[Evidence]) -> tuple[SignedDigraph, list[PseudoNode]]:
    b = GraphBuilder()
    for ev in evidence:
        for nm in (ev.actor, ev.source, ev.target):
            if nm is not None:
                b.node(nm)
    pseudo: list[tuple[str, Evidence]] = []
    k = 0
    for ev in evidence:
        A, B, C = ev.source, ev.target, ev.actor
        if ev.kind is EvidenceKind.DIRECT:
            b.add(A, B, ev.sign_inner, critical=True)
        elif ev.kind is EvidenceKind.CATALYTIC:
            b.add(A, B, ev.sign_inner, critical=True)
            b.add(C, B, ev.sign_outer, critical=True)
        elif ev.kind is EvidenceKind.UPSTREAM_DIRECT:
            b.add(A, B, ev.sign_inner, critical=True)
            b.add(C, A, ev.sign_outer, critical=True)
        else:
            k += 1
            name = f"_P{k}"
            while name in b:
                name = "_" + name
            b.add(A, name, 1)
            b.add(name, B, ev.sign_inner)
            b.add(C, name, ev.sign_outer)
            pseudo.append((name, ev))
    g = b.build()
    return g, [PseudoNode(g.index(nm), ev) for nm, ev in pseudo]


def build_graph(evidence: list[Evidence]) -> SignedDigraph:
    return _build(evidence)[0]


@dataclass(frozen=True)
class Synthesis:
    evidence: tuple[Evidence, ...]
    graph: SignedDigraph
    pseudonodes: tuple[PseudoNode, ...]
    result: ReductionResult
    reduced: SignedDigraph
    pruned_pseudonodes: tuple[int, ...] = ()


def synthesize(text: str, solver: str = "critical2") -> Synthesis:
    """Parse, build, and reduce; returns the reduced network with its report."""
    evidence = parse_evidence(text)
    g, pseudo = _build(evidence)
    res = min_btr(g, solver)
    kept = list(res.kept)
    indeg = [0] * g.n
    outdeg = [0] * g.n
    for a in kept:
        outdeg[a.src] += 1
        indeg[a.dst] += 1
    # a pseudonode the reduction left dangling carries no information
    dead = tuple(p.id for p in pseudo if not indeg[p.id] or not outdeg[p.id])
    if dead:
        kept = [a for a in kept if a.src not in dead and a.dst not in dead]
    return Synthesis(tuple(evidence), g, tuple(pseudo), res, g.subgraph(kept), dead)


PORTFOLIO = ("critical2", "kry", "maxed2")
KRY_MAX_ARCS = 5000


def redundancy(g: SignedDigraph, exact: bool = False) -> Fraction:
    """R = 1 - |kept| / |E| for the smallest signed reduction found.

    Without ``exact`` this is the best of several approximate solvers, so it
    never exceeds the true value; with ``exact`` the brute-force optimum is used.
    """
    if g.m == 0:
        raise EmptyGraph("redundancy needs at least one arc")
    if exact:
        kept = exact_min(g, label_aware=True).kept_count
    else:
        kept = best_reduction(g).kept_count
    return 1 - Fraction(kept, g.m)


def best_reduction(g: SignedDigraph) -> ReductionResult:
    best = None
    for solver in PORTFOLIO:
        if solver == "kry" and g.m > KRY_MAX_ARCS:
            continue
        try:
            res = min_btr(g, solver)
        except CycleSearchBudgetExceeded:
            continue
        if best is None or res.kept_count < best.kept_count:
            best = res
    return best
