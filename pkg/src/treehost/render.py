"""SVG drawings of planar hosts, optionally highlighting an embedded pattern."""

from __future__ import annotations

from typing import Iterable, Optional

import networkx as nx

from .errors import EmbeddingFailed
from .graph import Graph

_PAD = 20.0


def planar_positions(g: Graph, size: float = 600.0) -> list[tuple[float, float]]:
    """Coordinates from a combinatorial planar embedding (straight-line, crossing-free)."""
    G = g.to_networkx()
    ok, emb = nx.check_planarity(G)
    if not ok:
        raise EmbeddingFailed("graph is not planar")
    pos = nx.combinatorial_embedding_to_pos(emb) if g.vertex_count >= 3 else {v: (v, 0) for v in G}
    xs = [p[0] for p in pos.values()] or [0]
    ys = [p[1] for p in pos.values()] or [0]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1)
    scale = (size - 2 * _PAD) / span
    return [((pos[v][0] - min(xs)) * scale + _PAD, size - _PAD - (pos[v][1] - min(ys)) * scale) for v in range(g.vertex_count)]


def render_svg(g: Graph, highlight: Optional[Iterable[tuple[int, int]]] = None, size: float = 600.0) -> str:
    pos = planar_positions(g, size)
    marked = {(min(u, v), max(u, v)) for u, v in (highlight or ())}
    hot = {x for e in marked for x in e}
    r = 2.5 if g.vertex_count > 200 else 4.0
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size:g}" height="{size:g}" viewBox="0 0 {size:g} {size:g}">']
    for u, v in g.edges():
        colour, width = ("#c0392b", 2.0) if (u, v) in marked else ("#888888", 0.8)
        (x1, y1), (x2, y2) = pos[u], pos[v]
        out.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" stroke="{colour}" stroke-width="{width}"/>')
    for v, (x, y) in enumerate(pos):
        fill = "#c0392b" if v in hot else "#333333"
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r}" fill="{fill}"><title>{v}</title></circle>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
