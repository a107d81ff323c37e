"""Planar hosts for outerplanar graphs.

``G'_n`` is the square of the path ``v_1 .. v_n`` with, for every ``i``, a
chain of stacked vertices ``w_{i+2,1}, w_{i+2,2}, ...`` inside the triangle
``v_i v_{i+1} v_{i+2}``.  ``G_n`` glues two copies of ``G'_n`` along their
first triangle (swapping ``v_1`` and ``v_2``) and its chain, which makes the
root edge ``v_1 v_2`` symmetric.  Every rooted path-like outerplanar graph on
at most ``n`` vertices embeds into ``G_n`` with its root edge on ``v_1 v_2``.

The recursive host hangs a copy of the host for ``ceil(n/2)`` off every edge
of ``G_n``; general outerplanar graphs are triangulated, cut along a Gyárfás
path of their weak dual, and the pieces placed recursively.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional

from .config import check_cap
from .errors import (
    EmbeddingFailed,
    InvalidParams,
    NotMaximalOuterplanar,
    NotOuterplanar,
)
from .graph import EmbeddingMap, Graph, verify_embedding
from .planarity import faces, is_outerplanar, is_planar
from .subgraph import subgraph_embed
from .trees import gyarfas_path_in

# --------------------------------------------------------------- path-like graphs


@dataclass(frozen=True)
class RootedPathLike:
    """Path-like outerplanar graph built from the root triangle ``u1 u2 u3``.

    Vertex ``u_i`` (i >= 4) joins ``u_{i-1}`` and ``y_i``, where ``y_3 = u_1``
    and ``y_i`` is ``u_{i-2}`` when ``choices[i-4]`` is 0 and ``y_{i-1}``
    when it is 1.  Vertex ``u_i`` has id ``i - 1``; the root edge is (0, 1).
    """

    n: int
    choices: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 3:
            raise InvalidParams("a path-like graph has at least 3 vertices")
        object.__setattr__(self, "choices", tuple(self.choices))
        if len(self.choices) != self.n - 3 or any(b not in (0, 1) for b in self.choices):
            raise InvalidParams(f"need {self.n - 3} binary choices")

    root_edge = (0, 1)

    def second_neighbours(self) -> list[int]:
        y = [-1, -1, 0]
        for i in range(3, self.n):
            y.append(i - 2 if self.choices[i - 3] == 0 else y[i - 1])
        return y

    def edges(self) -> list[tuple[int, int]]:
        y = self.second_neighbours()
        out = [(0, 1), (0, 2), (1, 2)]
        for i in range(3, self.n):
            out += [(i - 1, i), (y[i], i)]
        return out

    def graph(self) -> Graph:
        return Graph(self.n, self.edges())


def enumerate_pathlike(n: int) -> list[RootedPathLike]:
    """One rooted graph per (path-like graph, rooted ear) pair.

    The first five vertices are fixed (their choices carry no information
    once the root ear is fixed); every later vertex chooses freely.
    """
    if n < 3:
        raise InvalidParams("n must be at least 3")
    fixed = (0, 0)[: max(0, min(2, n - 3))]
    return [RootedPathLike(n, fixed + rest) for rest in itertools.product((0, 1), repeat=max(0, n - 5))]


# ------------------------------------------------------------------ G'_n and G_n


def gnp_size(n: int) -> int:
    return n + max(0, (n - 4) * (n - 3) // 2)


def gn_size(n: int) -> int:
    if n == 3:
        return 3
    return 3 * n - 7 + (n - 5) * (n - 4)


def gn_size_formula(n: int) -> int:
    """``3n - 7 + 2 * sum_{i=1}^{n-5} i``, the stated count (valid for n >= 4)."""
    return 3 * n - 7 + 2 * sum(range(1, n - 4))


@dataclass
class _Half:
    path: list[int]  # path[s] = id of v_s (1-based; path[0] unused)
    chains: dict[int, list[int]]  # chains[i][k] = id of w_{i+2,k}, chains[i][0] = v_{i+2}

    def chain(self, i: int, k: int) -> int:
        try:
            return self.chains[i][k]
        except (KeyError, IndexError):
            raise EmbeddingFailed(f"no stacked vertex w_{i + 2},{k}") from None


@dataclass
class GnCore:
    """``G_n`` (or ``G'_n`` when ``x`` is None) with its named vertices."""

    n: int
    graph: Graph
    v: _Half
    x: Optional[_Half]
    names: dict[int, str]

    @property
    def root_edge(self) -> tuple[int, int]:
        return self.v.path[1], self.v.path[2]


def _grow_half(n, path, edges, names, prefix, next_id, shared_chain=None):
    chains: dict[int, list[int]] = {}
    for s in range(1, n - 1):
        chains[s] = [path[s + 2]]
    for s in range(1, n + 1):
        if s + 1 <= n:
            edges.append((path[s], path[s + 1]))
        if s + 2 <= n:
            edges.append((path[s], path[s + 2]))
    for i in range(1, n - 3):
        for j in range(1, n - 3 - i + 1):
            if i == 1 and shared_chain is not None:
                w = shared_chain[j]
            else:
                w = next_id
                next_id += 1
                names[w] = f"{prefix}w{i + 2},{j}"
            chains[i].append(w)
            for u in (path[i], path[i + 1], chains[i][j - 1]):
                edges.append((u, w))
    return _Half(path, chains), next_id


def build_gnp(n: int) -> GnCore:
    if n < 3:
        raise InvalidParams("n must be at least 3")
    path = [-1] + list(range(n))
    names = {i: f"v{i + 1}" for i in range(n)}
    edges: list = []
    half, nxt = _grow_half(n, path, edges, names, "", n)
    return GnCore(n, Graph(nxt, edges), half, None, names)


@lru_cache(maxsize=64)
def build_gn(n: int) -> GnCore:
    """``G_n`` with ``v_1 = 0`` and ``v_2 = 1``."""
    if n < 3:
        raise InvalidParams("n must be at least 3")
    vpath = [-1] + list(range(n))
    names = {i: f"v{i + 1}" for i in range(n)}
    edges: list = []
    vhalf, nxt = _grow_half(n, vpath, edges, names, "", n)
    xpath = [-1, vpath[2], vpath[1], vpath[3]]
    for s in range(4, n + 1):
        xpath.append(nxt)
        names[nxt] = f"x{s}"
        nxt += 1
    xhalf, nxt = _grow_half(n, xpath, edges, names, "x", nxt, shared_chain=vhalf.chains.get(1))
    return GnCore(n, Graph(nxt, edges), vhalf, xhalf, names)


def _embed_sequence(order: list[int], adj, core: GnCore, image: dict[int, int]) -> None:
    """Place the path-like graph generated by ``order`` (u1, u2, ...) into ``core``.

    ``order[0], order[1]`` go to ``v1, v2``; ``adj`` is the adjacency of the
    pattern graph (sets).
    """
    k = len(order)
    if k > core.n:
        raise EmbeddingFailed(f"{k} vertices exceed host parameter {core.n}")
    half = core.v
    seq = list(order)
    if k >= 4 and seq[3] not in adj[seq[1]]:
        if core.x is None:
            raise EmbeddingFailed("mirrored root needs the glued host")
        half = core.x
        seq[0], seq[1] = seq[1], seq[0]
    image[seq[0]] = half.path[1]
    image[seq[1]] = half.path[2]
    if k == 2:
        return
    s = 1
    while True:
        m = len(seq)
        if m == 3:
            image[seq[2]] = half.path[s + 2]
            return
        pivot = seq[1]
        j = m - 1
        for idx in range(4, m + 1):
            if seq[idx - 1] not in adj[pivot]:
                j = idx - 2
                break
        for kk in range(j - 2):
            image[seq[j - 1 - kk]] = half.chain(s, kk)
        seq = [seq[1], seq[j - 1]] + seq[j:]
        s += 1


def embed_pathlike(h: RootedPathLike, core: Optional[GnCore] = None) -> tuple[GnCore, EmbeddingMap]:
    """Embed ``h`` into ``G_n`` (n = |h| unless a core is given), root edge onto ``v1 v2``."""
    if core is None:
        core = build_gn(h.n)
    g = h.graph()
    adj = [set(g.neighbors(v)) for v in range(h.n)]
    image: dict[int, int] = {}
    _embed_sequence(list(range(h.n)), adj, core, image)
    emb = EmbeddingMap(h.n, tuple(image[v] for v in range(h.n)))
    pins = [(0, core.v.path[1]), (1, core.v.path[2])]
    if not verify_embedding(g, core.graph, emb, pins=pins):
        raise EmbeddingFailed("path-like embedding does not verify")
    return core, emb


# ----------------------------------------------------------------- weak duals


@dataclass
class WeakDualTree:
    triangles: list[tuple[int, int, int]]
    tree: Graph
    edge_faces: dict[tuple[int, int], list[int]] = field(repr=False)

    def is_path(self) -> bool:
        return self.tree.max_degree() <= 2


def _triangles(g: Graph) -> list[tuple[int, int, int]]:
    out = []
    for u, v in g.edges():
        for w in g.neighbors(u) & g.neighbors(v):
            if w > v:
                out.append((u, v, w))
    return sorted(out)


def is_maximal_outerplanar(g: Graph) -> bool:
    n = g.vertex_count
    if n < 3:
        return g.edge_count == n * (n - 1) // 2
    return g.edge_count == 2 * n - 3 and is_outerplanar(g)


def weak_dual(h: Graph) -> WeakDualTree:
    n = h.vertex_count
    if n < 3 or not is_maximal_outerplanar(h):
        raise NotMaximalOuterplanar("weak dual needs a maximal outerplanar graph on >= 3 vertices")
    tris = _triangles(h)
    if len(tris) != n - 2:
        raise NotMaximalOuterplanar("triangle count differs from n - 2")
    edge_faces: dict[tuple[int, int], list[int]] = {}
    for f, (a, b, c) in enumerate(tris):
        for e in ((a, b), (a, c), (b, c)):
            edge_faces.setdefault(e, []).append(f)
    dual = [(fs[0], fs[1]) for fs in edge_faces.values() if len(fs) == 2]
    return WeakDualTree(tris, Graph(len(tris), dual), edge_faces)


# ----------------------------------------------------------- triangulation


def _rotation(g: Graph) -> list[list[int]]:
    ok, rot = is_planar(g, witness=True)
    if not ok:
        raise NotOuterplanar("graph is not planar")
    return rot


def triangulate_outerplanar(g: Graph) -> Graph:
    """A maximal outerplanar supergraph of ``g`` on the same vertex set."""
    n = g.vertex_count
    if n <= 3:
        return Graph(n, itertools.combinations(range(n), 2))
    if not is_outerplanar(g):
        raise NotOuterplanar("input is not outerplanar")
    if is_maximal_outerplanar(g):
        return g
    apex = n
    with_apex = Graph(n + 1, list(g.edges()) + [(v, apex) for v in range(n)])
    cyc = _rotation(with_apex)[apex]
    edges = set(g.edges())
    for a, b in zip(cyc, cyc[1:] + cyc[:1]):
        edges.add((min(a, b), max(a, b)))
    ring = Graph(n, edges)
    rot = _rotation(Graph(n + 1, list(ring.edges()) + [(v, apex) for v in range(n)]))
    for face in faces(rot):
        verts = list(face)
        if apex in verts or len(verts) <= 3:
            continue
        s = min(verts)
        for w in verts:
            if w != s:
                edges.add((min(s, w), max(s, w)))
    out = Graph(n, edges)
    if out.edge_count != 2 * n - 3:
        raise NotOuterplanar("triangulation did not reach 2n - 3 edges")
    return out


# ----------------------------------------------------------- recursive host


def _gn_edges(m: int) -> int:
    return build_gn(m).graph.edge_count


@lru_cache(maxsize=None)
def script_size(n: int) -> int:
    """Vertex count of the recursive host for parameter ``n``."""
    if n < 3:
        raise InvalidParams("n must be at least 3")
    if n <= 5:
        return gn_size(n)
    return gn_size(n) + _gn_edges(n) * (script_size((n + 1) // 2) - 2)


class Instance:
    """One copy of the recursive host: a core ``G_m`` plus lazily reached attachments."""

    __slots__ = ("m", "ids", "offset", "core", "_edges")

    def __init__(self, m: int, ids: list[int], offset: int):
        self.m = m
        self.core = build_gn(m)
        self.ids = ids  # core local id -> global id
        self.offset = offset  # first global id of the attachments' private vertices
        self._edges = self.core.graph.edges() if m > 5 else []

    def attachment_keys(self) -> list[tuple[int, int]]:
        return list(self._edges)

    def attachment(self, a: int, b: int) -> "Instance":
        """Copy hung on core edge ``(a, b)`` (local ids); its ``v1`` is ``min(a, b)``."""
        if self.m <= 5:
            raise EmbeddingFailed(f"parameter {self.m} has no attachments")
        key = (min(a, b), max(a, b))
        idx = self._edges.index(key)
        child_m = (self.m + 1) // 2
        private = script_size(child_m) - 2
        start = self.offset + idx * private
        core_n = gn_size(child_m)
        ids = [self.ids[key[0]], self.ids[key[1]]] + list(range(start, start + core_n - 2))
        return Instance(child_m, ids, start + core_n - 2)


class RecursiveHost:
    """The host for all outerplanar graphs on at most ``n`` vertices."""

    def __init__(self, n: int):
        if n < 3:
            raise InvalidParams("n must be at least 3")
        self.n = n
        self.vertex_count = script_size(n)
        core_n = gn_size(n)
        self.root = Instance(n, list(range(core_n)), core_n)
        self._graph: Optional[Graph] = None

    @property
    def root_edge(self) -> tuple[int, int]:
        return 0, 1

    def instances(self) -> Iterator[Instance]:
        stack = [self.root]
        while stack:
            inst = stack.pop()
            yield inst
            for a, b in reversed(inst.attachment_keys()):
                stack.append(inst.attachment(a, b))

    @property
    def graph(self) -> Graph:
        if self._graph is None:
            check_cap(self.vertex_count, f"recursive outerplanar host for n={self.n}")
            edges = []
            for inst in self.instances():
                ids = inst.ids
                edges.extend((ids[a], ids[b]) for a, b in inst.core.graph.edges())
            self._graph = Graph(self.vertex_count, edges)
        return self._graph

    def has_edge(self, u: int, v: int) -> bool:
        return self.graph.has_edge(u, v)


def build_script_g(n: int, materialize: bool = True) -> RecursiveHost:
    h = RecursiveHost(n)
    if materialize:
        h.graph  # noqa: B018
    return h


# ------------------------------------------------------------ general embedding


@dataclass
class OuterplanarStats:
    pieces: int = 0
    searched: int = 0
    largest_hanging: int = 0


def _outer_edge(h: Graph) -> tuple[int, int]:
    """An edge of the outer cycle: the smallest vertex and its smaller cycle neighbour."""
    tri_count: dict[tuple[int, int], int] = {}
    for a, b, c in _triangles(h):
        for e in ((a, b), (a, c), (b, c)):
            tri_count[e] = tri_count.get(e, 0) + 1
    return min(e for e, k in tri_count.items() if k == 1)


def _piece_search(vertices, adj, root, inst: Instance, image) -> None:
    """Place a small piece in a host without attachments by exhaustive search."""
    local = {v: i for i, v in enumerate(vertices)}
    edges = [(local[a], local[b]) for a in vertices for b in adj[a] if b in local and local[a] < local[b]]
    pattern = Graph(len(vertices), edges)
    pins = [(local[root[0]], 0), (local[root[1]], 1)]
    res = subgraph_embed(pattern, inst.core.graph, pins=pins)
    if res is None:
        raise EmbeddingFailed(f"piece on {len(vertices)} vertices does not fit parameter {inst.m}")
    for v in vertices:
        image[v] = inst.ids[res.image[local[v]]]


def embed_outerplanar(h: Graph, host: Optional[RecursiveHost] = None, stats: Optional[OuterplanarStats] = None) -> tuple[RecursiveHost, EmbeddingMap]:
    """Embed an outerplanar graph into the recursive host for ``n >= |h|``."""
    n = h.vertex_count
    if host is None:
        host = build_script_g(max(n, 3))
    if n > host.n:
        raise InvalidParams(f"pattern has {n} vertices, host parameter is {host.n}")
    if stats is None:
        stats = OuterplanarStats()
    if n == 0:
        return host, EmbeddingMap(0, ())
    if n <= 2:
        emb = EmbeddingMap(n, tuple(range(n)))
        if not verify_embedding(h, host, emb):
            raise EmbeddingFailed("trivial map does not verify")
        return host, emb
    tri = triangulate_outerplanar(h)
    dual = weak_dual(tri)
    adj = [set(tri.neighbors(v)) for v in range(n)]
    tris = dual.triangles
    tadj = dual.tree.adjacency()
    image: dict[int, int] = {}
    root = _outer_edge(tri)
    # work items: (faces of the piece, oriented root edge, instance)
    work = [(list(range(len(tris))), root, host.root)]
    while work:
        piece, (p, q), inst = work.pop()
        stats.pieces += 1
        members = set(piece)
        verts = sorted({x for f in piece for x in tris[f]})
        if len(verts) > inst.m:
            raise EmbeddingFailed(f"piece of {len(verts)} vertices exceeds parameter {inst.m}")
        if inst.m <= 5:
            stats.searched += 1
            _piece_search(verts, adj, (p, q), inst, image)
            continue
        start = next(f for f in piece if p in tris[f] and q in tris[f])
        blocked = set(range(len(tris))) - members
        path = gyarfas_path_in(tadj, start, blocked)
        # generation order along the path
        order = [p, q, next(x for x in tris[start] if x not in (p, q))]
        seen = set(order)
        for f in path[1:]:
            new = [x for x in tris[f] if x not in seen]
            if len(new) != 1:
                raise EmbeddingFailed("dual path does not add one vertex per face")
            order.append(new[0])
            seen.add(new[0])
        local: dict[int, int] = {}
        _embed_sequence(order, adj, inst.core, local)
        for v, lv in local.items():
            image[v] = inst.ids[lv]
        on_path = set(path)
        used_edges = set()
        limit = (inst.m + 1) // 2
        for f in path:
            for g in tadj[f]:
                if g in on_path or g not in members:
                    continue
                comp = _component(tadj, g, on_path | blocked)
                a, b = sorted(set(tris[f]) & set(tris[g]))
                la, lb = local[a], local[b]
                key = (min(la, lb), max(la, lb))
                if key in used_edges:
                    raise EmbeddingFailed("two hanging pieces share an attachment edge")
                used_edges.add(key)
                size = len({x for c in comp for x in tris[c]})
                stats.largest_hanging = max(stats.largest_hanging, size)
                if size > limit:
                    raise EmbeddingFailed(f"hanging piece of {size} vertices exceeds {limit}")
                child = inst.attachment(la, lb)
                oriented = (a, b) if la < lb else (b, a)
                work.append((comp, oriented, child))
    emb = EmbeddingMap(n, tuple(image[v] for v in range(n)))
    if not verify_embedding(h, host, emb):
        raise EmbeddingFailed("outerplanar embedding does not verify")
    return host, emb


def _component(tadj, start, blocked) -> list[int]:
    seen = {start}
    stack = [start]
    while stack:
        f = stack.pop()
        for g in tadj[f]:
            if g not in seen and g not in blocked:
                seen.add(g)
                stack.append(g)
    return sorted(seen)


# ------------------------------------------------------------ enumeration aids


def polygon_triangulations(n: int) -> Iterator[Graph]:
    """Every triangulation of the convex n-gon on vertices 0..n-1 (Catalan many)."""
    if n < 3:
        raise InvalidParams("need n >= 3")

    def rec(i, j):
        if j - i < 2:
            yield []
            return
        for k in range(i + 1, j):
            for left in rec(i, k):
                for right in rec(k, j):
                    yield left + right + [(i, k), (k, j)]

    ring = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    for chords in rec(0, n - 1):
        yield Graph(n, ring + chords)


def random_outerplanar(n: int, rng, density: float = 0.5) -> Graph:
    """Random outerplanar graph: a relabelled random polygon triangulation with edges dropped."""
    if n < 3:
        return Graph(n, [(i, i + 1) for i in range(n - 1)] if rng.random() < 0.5 else [])
    verts = list(range(n))
    edges = set((i, (i + 1) % n) for i in range(n))

    def split(poly):
        if len(poly) < 4:
            return
        a = rng.randrange(len(poly))
        b = (a + rng.randrange(2, len(poly) - 1)) % len(poly)
        a, b = min(a, b), max(a, b)
        edges.add((poly[a], poly[b]))
        split(poly[a:b + 1])
        split(poly[b:] + poly[:a + 1])

    split(verts)
    perm = list(range(n))
    rng.shuffle(perm)
    kept = [(perm[a], perm[b]) for a, b in edges if rng.random() < density]
    return Graph(n, kept)
