"""Subgraph embedding by forward-checking backtracking.

The constraint system is the one a SAT encoding would use: one variable per
(pattern vertex, host vertex) pair, at most one image per host vertex, and
for every pattern edge {a, b} and host non-edge {p, q} the binary clause
"not (a -> p and b -> q)".  Pins and adjacency obligations only shrink the
initial domains.  The search itself runs in :mod:`treehost.kernel`.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Optional

from . import kernel
from .errors import InvalidPin
from .graph import AdjacencyConstraint, EmbeddingMap, Graph, _as_constraints


def host_masks(host: Graph) -> list[int]:
    masks = []
    for v in range(host.vertex_count):
        m = 0
        for w in host.neighbors(v):
            m |= 1 << w
        masks.append(m)
    return masks


def _check_pins(pattern: Graph, host: Graph, pins) -> dict[int, int]:
    out: dict[int, int] = {}
    used: set[int] = set()
    for p, h in pins:
        if not 0 <= p < pattern.vertex_count:
            raise InvalidPin(f"pattern vertex {p} out of range")
        if not 0 <= h < host.vertex_count:
            raise InvalidPin(f"host vertex {h} out of range")
        if p in out:
            raise InvalidPin(f"pattern vertex {p} pinned twice")
        if h in used:
            raise InvalidPin(f"host vertex {h} is the target of two pins")
        out[p] = h
        used.add(h)
    return out


def initial_domains(
    pattern: Graph,
    host: Graph,
    pins: dict[int, int],
    constraints: list[AdjacencyConstraint],
    masks: list[int],
) -> list[int]:
    hn = host.vertex_count
    by_degree: dict[int, int] = {}
    hdeg = [host.degree(v) for v in range(hn)]
    pinned_hosts = 0
    for h in pins.values():
        pinned_hosts |= 1 << h
    doms = []
    for a in range(pattern.vertex_count):
        da = pattern.degree(a)
        if da not in by_degree:
            m = 0
            for v in range(hn):
                if hdeg[v] >= da:
                    m |= 1 << v
            by_degree[da] = m
        if a in pins:
            d = (1 << pins[a]) & by_degree[da]
        else:
            d = by_degree[da] & ~pinned_hosts
        doms.append(d)
    for c in constraints:
        if not 0 <= c.required_host_neighbor < hn:
            raise InvalidPin(f"adjacency target {c.required_host_neighbor} out of range")
        doms[c.pattern_vertex] &= masks[c.required_host_neighbor]
    return doms


def variable_order(pattern: Graph, doms: list[int]) -> list[int]:
    """BFS from the most constrained vertex; neighbours by descending degree."""
    deg = [pattern.degree(a) for a in range(pattern.vertex_count)]
    remaining = set(range(pattern.vertex_count))
    order: list[int] = []
    while remaining:
        start = min(remaining, key=lambda a: (doms[a].bit_count(), -deg[a], a))
        remaining.discard(start)
        queue = deque([start])
        while queue:
            a = queue.popleft()
            order.append(a)
            for b in sorted(pattern.neighbors(a), key=lambda b: (-deg[b], b)):
                if b in remaining:
                    remaining.discard(b)
                    queue.append(b)
    return order


def subgraph_embed(
    pattern: Graph,
    host: Graph,
    pins: Iterable[tuple[int, int]] = (),
    adjacency_constraints: Iterable = (),
    *,
    masks: Optional[list[int]] = None,
) -> Optional[EmbeddingMap]:
    """Find an injective edge-preserving map ``pattern -> host``, or ``None``.

    The search is complete: ``None`` means no map satisfying the pins and
    adjacency constraints exists.  ``masks`` may carry precomputed host
    neighbourhood bitsets when the same host is queried repeatedly.
    """
    pin_map = _check_pins(pattern, host, pins)
    constraints = _as_constraints(adjacency_constraints)
    for c in constraints:
        if not 0 <= c.pattern_vertex < pattern.vertex_count:
            raise InvalidPin(f"constrained pattern vertex {c.pattern_vertex} out of range")
    P = pattern.vertex_count
    if P > host.vertex_count:
        return None
    if P == 0:
        return EmbeddingMap(0, ())
    if masks is None:
        masks = host_masks(host)
    doms = initial_domains(pattern, host, pin_map, constraints, masks)
    order = variable_order(pattern, doms)
    pos = {a: i for i, a in enumerate(order)}
    later_adj = []
    for i, a in enumerate(order):
        m = 0
        for b in pattern.neighbors(a):
            j = pos[b]
            if j > i:
                m |= 1 << j
        later_adj.append(m)
    assign = kernel.search(later_adj, [doms[a] for a in order], masks)
    if assign is None:
        return None
    image = [0] * P
    for i, a in enumerate(order):
        image[a] = assign[i]
    return EmbeddingMap(P, tuple(image))
