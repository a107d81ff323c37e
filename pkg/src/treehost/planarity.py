"""Planarity and outerplanarity tests.

Backed by networkx's left-right planarity test; the rotation system it
returns is converted to plain lists so callers never see networkx types.
"""

from __future__ import annotations

import networkx as nx

from .graph import Graph

Rotation = list[list[int]]


def _nx_graph(g: Graph, apex: bool = False) -> nx.Graph:
    h = g.to_networkx()
    if apex:
        a = g.vertex_count
        h.add_node(a)
        h.add_edges_from((a, v) for v in range(a))
    return h


def is_planar(g: Graph, witness: bool = False):
    """True iff ``g`` is planar.

    With ``witness=True`` returns ``(flag, rotation)`` where ``rotation[v]`` is
    the clockwise neighbour order of ``v`` (``None`` when not planar).
    """
    n, m = g.vertex_count, g.edge_count
    if not witness and n >= 3 and m > 3 * n - 6:
        return False
    flag, emb = nx.check_planarity(_nx_graph(g))
    if not witness:
        return flag
    if not flag:
        return False, None
    return True, [list(emb.neighbors_cw_order(v)) if g.degree(v) else [] for v in range(n)]


def is_outerplanar(g: Graph) -> bool:
    """True iff ``g`` plus an apex joined to every vertex is planar."""
    n, m = g.vertex_count, g.edge_count
    if n >= 2 and m > 2 * n - 3:
        return False
    flag, _ = nx.check_planarity(_nx_graph(g, apex=True))
    return flag


def faces(rotation: Rotation) -> list[list[int]]:
    """Faces traced from a rotation system (each as a vertex cycle)."""
    pos = [{w: i for i, w in enumerate(r)} for r in rotation]
    seen: set[tuple[int, int]] = set()
    out = []
    for u, r in enumerate(rotation):
        for v in r:
            if (u, v) in seen:
                continue
            face = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                face.append(a)
                rb = rotation[b]
                # next dart: the neighbour after a in b's clockwise order
                a, b = b, rb[(pos[b][a] + 1) % len(rb)]
            out.append(face)
    return out
