"""DOT and JSON renderings of graphs and arc sets."""
from __future__ import annotations

import hashlib
import json
from typing import Iterable

from .graph import Arc, SignedDigraph, format_decimal

SCHEMA = "tredkit/1"


def digest(text: str | bytes) -> str:
    data = text.encode() if isinstance(text, str) else text
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: SignedDigraph, arcs: Iterable[Arc] | None = None,
           pseudonodes: Iterable[int] = ()) -> str:
    """Inhibitory arcs get a tee head, critical arcs are drawn bold."""
    arcs = g.arcs if arcs is None else sorted(arcs, key=lambda a: a.key)
    pseudo = set(pseudonodes)
    lines = ["digraph {"]
    for v, name in enumerate(g.names):
        attrs = " [shape=point]" if v in pseudo else ""
        lines.append(f"  {_quote(name)}{attrs};")
    for a in arcs:
        attrs = []
        if a.label < 0:
            attrs.append("arrowhead=tee")
        if a.critical:
            attrs.append("style=bold")
        if a.weight != 1:
            attrs.append(f'label="{format_decimal(a.weight)}"')
        tail = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_quote(g.names[a.src])} -> {_quote(g.names[a.dst])}{tail};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def arc_record(g: SignedDigraph, a: Arc) -> dict:
    return {"src": g.names[a.src], "dst": g.names[a.dst], "sign": "+" if a.label > 0 else "-",
            "weight": format_decimal(a.weight), "critical": a.critical}


def dumps(payload: dict) -> str:
    """Stable JSON with a schema tag; keys sorted, exact numbers as strings."""
    return json.dumps({"schema": SCHEMA, **payload}, sort_keys=True, indent=2, default=str) + "\n"
