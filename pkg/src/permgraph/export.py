"""DOT and JSON serializations of a materialized G(n)."""

from __future__ import annotations

import json

from .perm import format_perm


def to_dot(g) -> str:
    lines = [f'digraph "G({g.n})" {{']
    for v in range(g.vertex_count):
        lines.append(f'  "{format_perm(g.vertex(v))}";')
    for eid, t, h in g.edges():
        lines.append(f'  "{format_perm(g.vertex(t))}" -> "{format_perm(g.vertex(h))}" '
                     f'[label="{format_perm(g.edge(eid))}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json_dict(g) -> dict:
    return {
        "n": g.n,
        "vertices": [format_perm(g.vertex(v)) for v in range(g.vertex_count)],
        "edges": [{"edge": format_perm(g.edge(eid)),
                   "tail": format_perm(g.vertex(t)),
                   "head": format_perm(g.vertex(h))} for eid, t, h in g.edges()],
    }


def to_json(g) -> str:
    return json.dumps(to_json_dict(g), indent=1) + "\n"
