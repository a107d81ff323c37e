"""Recursive stacked hosts.

A host is a nest of *copies*.  Every copy owns a contiguous block of interior
vertex ids: first its frame vertices (the centre ``c`` first), then the blocks
of its children in order.  The outer role vertices of a copy belong to an
ancestor.  Hosts are never stored edge by edge: vertex lookup and adjacency
are answered by descending the nest, so hosts far larger than memory allows
can still be used as embedding targets.  ``HostGraph.graph`` materializes the
host when it fits under the vertex cap.

Flavors:

* ``uniform``: every bounded face stacked ``d`` times (variant 0).
* ``triangulated``: the two-variant recursive hosts; each copy is a stacked
  triangulation of its outer triangle.
* ``outerplanar``: the trimmed hosts, which keep only ``o1``, ``o2``, ``c``,
  ``c_r`` and the edges at the centre, plus a telescope of small variant-1
  copies at the centre(s).
"""

from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from .config import check_cap
from .errors import AllocationInfeasible, InvalidParams, UnknownAnchor
from .graph import Graph

UNIFORM = "uniform"
TRIANGULATED = "triangulated"
OUTERPLANAR = "outerplanar"
FLAVORS = (UNIFORM, TRIANGULATED, OUTERPLANAR)


def outer_roles(flavor: str, variant: int) -> tuple[str, ...]:
    if flavor == OUTERPLANAR:
        return ("o1",) if variant == 1 else ("o1", "o2")
    return ("o1", "o2", "o3")


@dataclass(frozen=True)
class ChildSpec:
    variant: int
    depth: int
    roles: tuple[str, ...]  # parent names playing the child's outer roles, in order


@dataclass(frozen=True)
class Layout:
    frame: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    children: tuple[ChildSpec, ...]
    chain: Optional[int]  # index of the variant-1 child sharing this copy's o1


def _tri(*names):
    return tuple((a, b) for a, b in names)


@lru_cache(maxsize=None)
def layout(flavor: str, variant: int, depth: int) -> Layout:
    _check(depth, variant, flavor)
    e = depth - 1
    if flavor == UNIFORM:
        if depth == 0:
            return Layout((), (), (), None)
        kids = tuple(ChildSpec(0, e, r) for r in (("c", "o1", "o2"), ("c", "o2", "o3"), ("c", "o3", "o1")))
        return Layout(("c",), _tri(("c", "o1"), ("c", "o2"), ("c", "o3")), kids, None)

    if flavor == TRIANGULATED:
        if depth == 0:
            return Layout(("c",), _tri(("c", "o1"), ("c", "o2"), ("c", "o3")), (), None)
        if variant == 1:
            edges = _tri(
                ("c", "o1"), ("c", "o2"), ("c", "o3"),
                ("a1", "o2"), ("a1", "o3"), ("a1", "c"),
                ("a2", "o3"), ("a2", "o1"), ("a2", "c"),
                ("a3", "o1"), ("a3", "o2"), ("a3", "c"),
            )
            kids = (
                ChildSpec(2, e, ("o1", "c", "a3")),
                ChildSpec(1, e, ("c", "a3", "o2")),
                ChildSpec(1, e, ("c", "o2", "a1")),
                ChildSpec(1, e, ("c", "a1", "o3")),
                ChildSpec(1, e, ("c", "o3", "a2")),
                ChildSpec(1, e, ("o1", "a2", "c")),
            )
            return Layout(("c", "a1", "a2", "a3"), edges, kids, 5)
        edges = _tri(
            ("c", "o1"), ("c", "o2"), ("c", "o3"),
            ("c_r", "o2"), ("c_r", "o3"), ("c_r", "c"),
            ("a1", "o1"), ("a1", "o2"), ("a1", "c"),
            ("a2", "o3"), ("a2", "o1"), ("a2", "c"),
            ("a3", "o2"), ("a3", "o3"), ("a3", "c_r"),
            ("a4", "c"), ("a4", "o2"), ("a4", "c_r"),
        )
        kids = (
            ChildSpec(2, e, ("o1", "c", "a1")),
            ChildSpec(2, e, ("c", "o2", "a1")),
            ChildSpec(2, e, ("c", "c_r", "a4")),
            ChildSpec(1, e, ("c", "o1", "a2")),
            ChildSpec(1, e, ("c", "o3", "a2")),
            ChildSpec(1, e, ("c", "o2", "a4")),
            ChildSpec(1, e, ("c_r", "o3", "c")),
            ChildSpec(1, e, ("c_r", "a4", "o2")),
            ChildSpec(1, e, ("c_r", "o3", "a3")),
            ChildSpec(1, e, ("c_r", "o2", "a3")),
            ChildSpec(1, e, ("o1", "o3", "a2")),
        )
        return Layout(("c", "c_r", "a1", "a2", "a3", "a4"), edges, kids, 10)

    # outerplanar trim
    if depth == 0:
        if variant == 1:
            return Layout(("c",), _tri(("c", "o1")), (), None)
        return Layout(("c",), _tri(("c", "o1"), ("c", "o2")), (), None)
    if variant == 1:
        kids = [
            ChildSpec(2, e, ("o1", "c")),
            ChildSpec(1, e, ("c",)),
            ChildSpec(1, e, ("c",)),
            ChildSpec(1, e, ("c",)),
            ChildSpec(1, e, ("o1",)),
        ]
        kids += [ChildSpec(1, j, ("c",)) for j in range(depth - 1)]
        return Layout(("c",), _tri(("c", "o1")), tuple(kids), 4)
    kids = [
        ChildSpec(2, e, ("o1", "c")),
        ChildSpec(2, e, ("c", "o2")),
        ChildSpec(2, e, ("c", "c_r")),
        ChildSpec(1, e, ("c",)),
        ChildSpec(1, e, ("c",)),
        ChildSpec(1, e, ("c_r",)),
        ChildSpec(1, e, ("c_r",)),
        ChildSpec(1, e, ("c_r",)),
        ChildSpec(1, e, ("o1",)),
    ]
    kids += [ChildSpec(1, j, ("c",)) for j in range(depth - 2)]
    kids += [ChildSpec(1, j, ("c_r",)) for j in range(depth - 1)]
    return Layout(("c", "c_r"), _tri(("c", "o1"), ("c", "o2"), ("c", "c_r")), tuple(kids), 8)


@lru_cache(maxsize=None)
def child_offsets(flavor: str, variant: int, depth: int) -> tuple[int, ...]:
    """Start of each child block relative to the copy's first interior vertex."""
    lay = layout(flavor, variant, depth)
    out = []
    s = len(lay.frame)
    for ch in lay.children:
        out.append(s)
        s += layout_size(flavor, ch.variant, ch.depth)
    return tuple(out)


def _check(depth, variant, flavor):
    if flavor not in FLAVORS:
        raise InvalidParams(f"unknown flavor {flavor!r}")
    if not isinstance(depth, int) or depth < 0:
        raise InvalidParams("depth must be a non-negative integer")
    if flavor == UNIFORM:
        if variant != 0:
            raise InvalidParams("the uniform host has variant 0")
    elif variant not in (1, 2):
        raise InvalidParams("variant must be 1 or 2")


@lru_cache(maxsize=None)
def layout_size(flavor: str, variant: int, depth: int) -> int:
    """Interior vertex count obtained by summing the layout tables."""
    lay = layout(flavor, variant, depth)
    return len(lay.frame) + sum(layout_size(flavor, ch.variant, ch.depth) for ch in lay.children)


# ------------------------------------------------------------------ recurrences


@lru_cache(maxsize=None)
def _tri_sizes(d: int) -> tuple[int, int]:
    a1, a2 = 1, 1
    for _ in range(d):
        a1, a2 = 5 * a1 + a2 + 4, 8 * a1 + 3 * a2 + 6
    return a1, a2


def _outer_sizes(d: int) -> tuple[list[int], list[int]]:
    b1 = [1]
    b2 = [1]
    prefix = [0, 1]  # prefix[k] = sum of b1[0..k-1]
    for e in range(1, d + 1):
        tele1 = prefix[e - 1]  # sum_{j=0}^{e-2}
        tele2 = prefix[max(e - 2, 0)]  # sum_{j=0}^{e-3}
        b1_em2 = b1[e - 2] if e >= 2 else 0
        b1.append(4 * b1[e - 1] + b2[e - 1] + 1 + tele1)
        b2.append(6 * b1[e - 1] + 3 * b2[e - 1] + 2 + b1_em2 + 2 * tele2)
        prefix.append(prefix[-1] + b1[e])
    return b1, b2


def size_s(d: int, variant: int, flavor: str) -> int:
    """Interior vertex count of a depth-``d`` copy, from the closed recurrences."""
    _check(d, variant, flavor)
    if flavor == UNIFORM:
        return (3 ** d - 1) // 2
    if flavor == TRIANGULATED:
        return _tri_sizes(d)[variant - 1]
    b1, b2 = _outer_sizes(d)
    return (b1 if variant == 1 else b2)[d]


# ------------------------------------------------------------------------ copies


class HostCopy:
    """One copy inside a host.  ``id`` is the vertex id of its first interior vertex."""

    __slots__ = ("host", "path", "depth", "variant", "start", "end", "roles")

    def __init__(self, host, path, depth, variant, start, end, roles):
        self.host = host
        self.path = path
        self.depth = depth
        self.variant = variant
        self.start = start
        self.end = end
        self.roles = roles

    @property
    def id(self) -> int:
        return self.start

    @property
    def flavor(self) -> str:
        return self.host.flavor

    @property
    def layout(self) -> Layout:
        return layout(self.host.flavor, self.variant, self.depth)

    @property
    def children(self) -> list["HostCopy"]:
        return self.host.children(self)

    def child(self, i: int) -> "HostCopy":
        return self.host.child(self, i)

    @property
    def chain_child(self) -> Optional["HostCopy"]:
        idx = self.layout.chain
        return None if idx is None else self.child(idx)

    def contains(self, v: int) -> bool:
        return self.start <= v < self.end

    def __getitem__(self, role: str) -> int:
        return self.roles[role]

    def __eq__(self, other):
        return isinstance(other, HostCopy) and other.host is self.host and other.start == self.start and other.path == self.path

    def __hash__(self):
        return hash((self.start, self.path))

    def __repr__(self):
        return f"HostCopy(id={self.start}, depth={self.depth}, variant={self.variant}, path={self.path})"


class HostGraph:
    """A lazily navigable stacked host; satisfies the ``HostLike`` protocol."""

    def __init__(self, depth: int, variant: int, flavor: str):
        _check(depth, variant, flavor)
        self.flavor = flavor
        self.depth = depth
        self.variant = variant
        names = outer_roles(flavor, variant)
        self.outer = {name: i for i, name in enumerate(names)}
        self.interior_count = layout_size(flavor, variant, depth)
        self.vertex_count = len(names) + self.interior_count
        start = len(names)
        self.root = self._make(None, (), depth, variant, start, dict(self.outer))
        self._graph: Optional[Graph] = None
        self._nbr_cache: dict[int, tuple[int, ...]] = {}

    # -- construction of handles

    def _make(self, parent, path, depth, variant, start, outer_ids) -> HostCopy:
        lay = layout(self.flavor, variant, depth)
        roles = dict(outer_ids)
        for i, name in enumerate(lay.frame):
            roles[name] = start + i
        if variant == 2 and "c_r" not in roles and "c" in roles:
            roles["c_r"] = roles["c"]
        end = start + layout_size(self.flavor, variant, depth)
        return HostCopy(self, path, depth, variant, start, end, roles)

    def child(self, copy: HostCopy, i: int) -> HostCopy:
        spec = copy.layout.children[i]
        s = copy.start + child_offsets(self.flavor, copy.variant, copy.depth)[i]
        names = outer_roles(self.flavor, spec.variant)
        outer_ids = {name: copy.roles[pname] for name, pname in zip(names, spec.roles)}
        return self._make(copy, copy.path + (i,), spec.depth, spec.variant, s, outer_ids)

    def children(self, copy: HostCopy) -> list[HostCopy]:
        return [self.child(copy, i) for i in range(len(copy.layout.children))]

    def copy_at(self, path) -> HostCopy:
        c = self.root
        for i in path:
            c = self.child(c, i)
        return c

    def locate(self, v: int) -> tuple[Optional[HostCopy], str]:
        """Copy whose frame holds ``v`` and its role name there (``None`` for root roles)."""
        if not 0 <= v < self.vertex_count:
            raise UnknownAnchor(f"vertex {v} not in host")
        if v < self.root.start:
            return None, outer_roles(self.flavor, self.variant)[v]
        c = self.root
        while True:
            lay = c.layout
            off = v - c.start
            if off < len(lay.frame):
                return c, lay.frame[off]
            i = bisect_right(child_offsets(self.flavor, c.variant, c.depth), off) - 1
            c = self.child(c, i)

    def _frame_neighbors(self, v: int) -> tuple[int, ...]:
        """Neighbours of interior ``v`` through edges of the copy owning it."""
        hit = self._nbr_cache.get(v)
        if hit is not None:
            return hit
        flavor = self.flavor
        variant, depth, start = self.variant, self.depth, self.root.start
        roles = self.outer
        while True:
            lay = layout(flavor, variant, depth)
            off = v - start
            nf = len(lay.frame)
            full = dict(roles)
            for k, name in enumerate(lay.frame):
                full[name] = start + k
            if off < nf:
                name = lay.frame[off]
                out = tuple(sorted({full[b] for a, b in lay.edges if a == name} | {full[a] for a, b in lay.edges if b == name}))
                if len(self._nbr_cache) > 1 << 20:
                    self._nbr_cache.clear()
                self._nbr_cache[v] = out
                return out
            i = bisect_right(child_offsets(flavor, variant, depth), off) - 1
            spec = lay.children[i]
            start += child_offsets(flavor, variant, depth)[i]
            roles = {cn: full[pn] for cn, pn in zip(outer_roles(flavor, spec.variant), spec.roles)}
            variant, depth = spec.variant, spec.depth

    # -- adjacency

    def has_edge(self, u: int, v: int) -> bool:
        if u == v or not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
            return False
        R = self.root.start
        if u < R and v < R:
            return self.flavor != OUTERPLANAR
        if u >= R and v in self._frame_neighbors(u):
            return True
        return v >= R and u in self._frame_neighbors(v)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Every edge once (possibly unsorted)."""
        R = self.root.start
        if self.flavor != OUTERPLANAR:
            for i in range(R):
                for j in range(i + 1, R):
                    yield i, j
        seen = set()
        for c in self.copies():
            for a, b in c.layout.edges:
                x, y = c.roles[a], c.roles[b]
                key = (min(x, y), max(x, y))
                if key not in seen:
                    seen.add(key)
                    yield key

    # -- traversal

    def copies(self) -> Iterator[HostCopy]:
        """All copies in ascending id (preorder)."""
        stack = [self.root]
        while stack:
            c = stack.pop()
            yield c
            stack.extend(reversed(self.children(c)))

    def copy_count(self) -> int:
        @lru_cache(maxsize=None)
        def count(v, d):
            return 1 + sum(count(ch.variant, ch.depth) for ch in layout(self.flavor, v, d).children)

        return count(self.variant, self.depth)

    @property
    def graph(self) -> Graph:
        if self._graph is None:
            check_cap(self.vertex_count, f"{self.flavor} host of depth {self.depth}")
            self._graph = Graph(self.vertex_count, self.edges())
        return self._graph

    def role_vertices(self) -> set[int]:
        return set(range(self.root.start))

    def registry_dump(self) -> dict:
        check_cap(self.vertex_count, "registry dump")
        out = []
        for c in self.copies():
            out.append(
                {
                    "id": c.id,
                    "depth": c.depth,
                    "variant": c.variant,
                    "roles": {k: c.roles[k] for k in sorted(c.roles)},
                    "children": [ch.id for ch in c.children],
                }
            )
        return {"copies": out}

    def registry_json(self) -> str:
        return json.dumps(self.registry_dump(), sort_keys=True, separators=(",", ":"))

    def __repr__(self):
        return f"HostGraph({self.flavor}, depth={self.depth}, variant={self.variant}, n={self.vertex_count})"


def build_uniform(d: int) -> HostGraph:
    """Uniformly stacked triangulation with ``3^d`` bounded faces."""
    return _build(d, 0, UNIFORM)


def build_host(d: int, variant: int, flavor: str, materialize: bool = False) -> HostGraph:
    """Recursive host of depth ``d``.

    The host is navigable at any size; ``materialize=True`` also builds the
    explicit graph (subject to the vertex cap).
    """
    return _build(d, variant, flavor, materialize)


def _build(d, variant, flavor, materialize=True):
    h = HostGraph(d, variant, flavor)
    if materialize:
        h.graph  # noqa: B018  (raises ResourceLimit when over the cap)
    return h


# ----------------------------------------------------------------------- pools


def pool_at(host: HostGraph, anchor: int, reserved=frozenset()) -> list[HostCopy]:
    """Maximal unreserved copies whose ``o1`` is ``anchor``, ascending id.

    A reserved copy keeps everything except its o1-chain child, which is
    offered in its place.
    """
    owner, name = host.locate(anchor)
    if owner is None:
        top = [host.root] if name == "o1" else []
    else:
        top = [ch for ch in host.children(owner) if ch.roles["o1"] == anchor]
    out = []
    stack = list(reversed(top))
    while stack:
        c = stack.pop()
        if c.id in reserved:
            ch = c.chain_child
            if ch is not None:
                stack.append(ch)
        else:
            out.append(c)
    out.sort(key=lambda c: c.id)
    return out


def split_slot(copy: HostCopy) -> tuple[HostCopy, HostCopy]:
    """The two depth-(d-1) sub-slots of a slot, both sharing its o1."""
    return copy.child(0), copy.chain_child


def allocate(depths, pool) -> list[HostCopy]:
    """Assign each requested depth a disjoint copy of exactly that depth.

    Greedy over requests by descending depth (ties by index); each request
    takes the free slot of least sufficient depth (ties by id), halving it
    until it fits.  Returns one copy per request, in request order.
    """
    free: dict[int, list[HostCopy]] = {}
    for c in pool:
        free.setdefault(c.depth, []).append(c)
    for lst in free.values():
        lst.sort(key=lambda c: c.id, reverse=True)
    out: list[Optional[HostCopy]] = [None] * len(depths)
    order = sorted(range(len(depths)), key=lambda i: (-depths[i], i))
    for i in order:
        r = depths[i]
        slot = None
        for d in sorted(k for k in free if k >= r and free[k]):
            slot = free[d].pop()
            break
        if slot is None:
            raise AllocationInfeasible(f"no free slot of depth >= {r} for request {i}")
        while slot.depth > r:
            keep, spare = split_slot(slot)
            lst = free.setdefault(spare.depth, [])
            lst.append(spare)
            lst.sort(key=lambda c: c.id, reverse=True)
            slot = keep
        out[i] = slot
    return out  # type: ignore[return-value]
