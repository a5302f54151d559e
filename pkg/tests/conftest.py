import sys
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from tredkit.graph import Arc, SignedDigraph  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE: dict = {}


@st.composite
def signed_graphs(draw, min_n=1, max_n=5, loops=True, max_arcs=14, critical=True):
    n = draw(st.integers(min_n, max_n))
    slots = [(u, v, s) for u in range(n) for v in range(n) for s in (1, -1)
             if loops or u != v]
    chosen = draw(st.lists(st.sampled_from(slots), max_size=max_arcs, unique=True)) if slots else []
    arcs = []
    for u, v, s in chosen:
        crit = draw(st.booleans()) and draw(st.booleans()) if critical else False
        arcs.append(Arc(u, v, s, 1, crit))
    return SignedDigraph(n, arcs)


@st.composite
def strong_graphs(draw, min_n=2, max_n=5, max_extra=8, signed=True, critical=True, weighted=False):
    """A Hamiltonian cycle over a random order plus extra random arcs."""
    n = draw(st.integers(min_n, max_n))
    order = draw(st.permutations(range(n)))
    pairs = [(order[i], order[(i + 1) % n]) for i in range(n)]
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
                          max_size=max_extra))
    arcs = []
    for u, v in pairs + [e for e in extra if e[0] != e[1]]:
        lab = draw(st.sampled_from((1, 1, -1))) if signed else 1
        w = draw(st.integers(0, 5)) if weighted else 1
        crit = critical and draw(st.integers(0, 5)) == 0
        arcs.append(Arc(u, v, lab, w, crit))
    return SignedDigraph(n, arcs)


@pytest.fixture
def report():
    def _report(criterion: int, ok: bool, detail: str = ""):
        ACCEPTANCE[criterion] = (ok, detail)
        line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(line)
        return ok
    return _report


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
