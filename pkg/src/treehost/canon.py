"""Canonical labeling by colour refinement plus individualization.

Exhaustive over the individualization tree (no automorphism pruning), which
is fine for the graph sizes this package deduplicates (n <= ~40).
"""

from __future__ import annotations

from collections import Counter
from typing import Optional, Sequence

from .graph import Graph


def _refine(adj, cells: list[list[int]]) -> list[list[int]]:
    while True:
        cell_of = {}
        for i, c in enumerate(cells):
            for v in c:
                cell_of[v] = i
        out = []
        changed = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in c:
                key = tuple(sorted(Counter(cell_of[w] for w in adj[v]).items()))
                groups.setdefault(key, []).append(v)
            if len(groups) > 1:
                changed = True
            for key in sorted(groups):
                out.append(groups[key])
        cells = out
        if not changed:
            return cells


def canonical_labeling(g: Graph, colors: Optional[Sequence] = None) -> tuple[list[int], tuple]:
    """Return ``(label, certificate)``.

    ``label[v]`` is the canonical position of ``v``; two graphs (with colours)
    are isomorphic iff their certificates are equal.
    """
    n = g.vertex_count
    adj = g.adjacency()
    if colors is None:
        colors = [0] * n
    by_color: dict = {}
    for v in range(n):
        by_color.setdefault(colors[v], []).append(v)
    color_key = tuple(sorted(Counter(colors).items()))
    start = _refine(adj, [by_color[c] for c in sorted(by_color)])

    best: list = [None, None]

    def leaf(cells):
        label = [0] * n
        for i, c in enumerate(cells):
            label[c[0]] = i
        cert = tuple(sorted((min(label[u], label[v]), max(label[u], label[v])) for u, v in g.edges()))
        if best[0] is None or cert < best[0]:
            best[0], best[1] = cert, label

    stack = [start]
    while stack:
        cells = stack.pop()
        target = None
        for i, c in enumerate(cells):
            if len(c) > 1 and (target is None or len(c) < len(cells[target])):
                target = i
        if target is None:
            leaf(cells)
            continue
        for v in reversed(cells[target]):
            rest = [w for w in cells[target] if w != v]
            child = cells[:target] + [[v], rest] + cells[target + 1:]
            stack.append(_refine(adj, child))
    if n == 0:
        return [], (0, color_key, ())
    return best[1], (n, color_key, best[0])


def canonical_form(g: Graph, colors: Optional[Sequence] = None) -> tuple:
    return canonical_labeling(g, colors)[1]


def canonical_graph(g: Graph) -> Graph:
    label, _ = canonical_labeling(g)
    return g.relabel(label)


def is_isomorphic(a: Graph, b: Graph) -> bool:
    return a.vertex_count == b.vertex_count and a.edge_count == b.edge_count and canonical_form(a) == canonical_form(b)
