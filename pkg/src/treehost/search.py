"""Exhaustive search for small universal triangulations.

Candidates come from face-stacking enumeration or a planar_code stream; each
is screened against every tree of the order with the complete subgraph
search.  Screening is parallel over candidates, but results are committed in
source order so the outcome never depends on scheduling.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import islice
from typing import Iterable, Iterator, Optional

from .canon import canonical_labeling
from .codecs import graph6_encode
from .errors import Exhausted, InvalidParams
from .graph import EmbeddingMap, Graph, complete_graph, verify_embedding
from .planarity import is_planar
from .subgraph import host_masks, subgraph_embed
from .trees import Tree, enumerate_trees

NO_UNIVERSAL_FROM = 48
"""Order from which no graph is universal for all trees of that order."""


# ------------------------------------------------------------------ recognition


def is_stacked(g: Graph, rng: Optional[random.Random] = None) -> bool:
    """True iff ``g`` is a stacked triangulation (a planar 3-tree).

    Peels degree-3 vertices whose neighbours form a triangle; ``rng`` picks
    the peeling order at random (the verdict does not depend on it).
    """
    n = g.vertex_count
    if n < 3 or g.edge_count != 3 * n - 6:
        return False
    adj = [set(g.neighbors(v)) for v in range(n)]
    alive = set(range(n))

    def removable(v):
        if len(adj[v]) != 3:
            return False
        a, b, c = adj[v]
        return b in adj[a] and c in adj[a] and c in adj[b]

    while len(alive) > 4:
        cands = [v for v in alive if removable(v)]
        if not cands:
            return False
        v = rng.choice(cands) if rng is not None else cands[0]
        for w in adj[v]:
            adj[w].discard(v)
        adj[v].clear()
        alive.discard(v)
    rest = sorted(alive)
    if not all(len(adj[v]) == len(rest) - 1 for v in rest):
        return False
    return is_planar(g)


# ----------------------------------------------------------------- enumeration

Face = tuple[int, int, int]


def _canon_with_faces(n: int, edges, faces_) -> tuple[tuple, Graph, list[Face]]:
    g = Graph(n, edges)
    label, cert = canonical_labeling(g)
    relabelled = g.relabel(label)
    fs = sorted(tuple(sorted(label[x] for x in f)) for f in faces_)
    return cert, relabelled, fs


def _k4():
    return complete_graph(4), [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]


def enumerate_stacked(n: int) -> Iterator[Graph]:
    """One stacked triangulation per isomorphism class, in canonical order."""
    for g, _ in _stacked_with_faces(n):
        yield g


def _stacked_with_faces(n: int) -> list[tuple[Graph, list[Face]]]:
    if n < 3:
        raise InvalidParams("stacked triangulations have at least 3 vertices")
    if n == 3:
        return [(complete_graph(3), [(0, 1, 2), (0, 1, 2)])]
    level = [_k4()]
    for m in range(5, n + 1):
        nxt: dict[tuple, tuple[Graph, list[Face]]] = {}
        for g, fs in level:
            v = m - 1
            for i, (a, b, c) in enumerate(fs):
                edges = list(g.edges()) + [(a, v), (b, v), (c, v)]
                new_faces = fs[:i] + fs[i + 1:] + [(a, b, v), (a, c, v), (b, c, v)]
                cert, cg, cf = _canon_with_faces(m, edges, new_faces)
                if cert not in nxt:
                    nxt[cert] = (cg, cf)
        level = [nxt[k] for k in sorted(nxt)]
    return level


def enumerate_triangulations(n: int) -> list[tuple[Graph, list[Face]]]:
    """All triangulations of the sphere on ``n`` vertices (up to isomorphism), by edge flips."""
    if n < 4:
        raise InvalidParams("need n >= 4")
    start = _stacked_with_faces(n)[0]
    cert0 = canonical_labeling(start[0])[1]
    seen = {cert0: start}
    queue = [start]
    while queue:
        g, fs = queue.pop()
        by_edge: dict[tuple[int, int], list[int]] = {}
        for a, b, c in fs:
            for e, opp in (((a, b), c), ((a, c), b), ((b, c), a)):
                by_edge.setdefault(e, []).append(opp)
        for (u, v), (x, y) in by_edge.items():
            if g.has_edge(x, y) or x == y:
                continue
            edges = [e for e in g.edges() if e != (u, v)] + [(min(x, y), max(x, y))]
            faces_ = [f for f in fs if not (u in f and v in f)]
            faces_ += [tuple(sorted((x, y, u))), tuple(sorted((x, y, v)))]
            cert, cg, cf = _canon_with_faces(n, edges, faces_)
            if cert not in seen:
                seen[cert] = (cg, cf)
                queue.append((cg, cf))
    return [seen[k] for k in sorted(seen)]


def is_four_connected_triangulation(g: Graph) -> bool:
    """A triangulation with no separating triangle (n >= 6)."""
    n = g.vertex_count
    if n < 6 or g.edge_count != 3 * n - 6:
        return False
    triangles = 0
    for u, v in g.edges():
        triangles += sum(1 for w in g.neighbors(u) & g.neighbors(v) if w > v)
    return triangles == 2 * n - 4


# ------------------------------------------------------------------ universality


def tree_order(trees: Iterable[Tree]) -> list[Tree]:
    """Hardest first: descending max degree, then descending diameter."""
    indexed = list(enumerate(trees))
    indexed.sort(key=lambda it: (-it[1].max_degree(), -it[1].diameter(), it[0]))
    return [t for _, t in indexed]


@dataclass
class SearchCertificate:
    candidate: Graph
    universal: bool
    maps: list[tuple[Tree, EmbeddingMap]] = field(default_factory=list)
    failing: Optional[Tree] = None
    seconds: float = 0.0

    def verify(self) -> bool:
        if self.universal:
            return all(verify_embedding(t.underlying, self.candidate, m) for t, m in self.maps)
        return self.failing is not None and subgraph_embed(self.failing.underlying, self.candidate) is None

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "candidate": graph6_encode(self.candidate),
            "universal": self.universal,
            "maps": [{"tree": graph6_encode(t.underlying), "image": list(m.image)} for t, m in self.maps],
            "failing": graph6_encode(self.failing.underlying) if self.failing is not None else None,
        }
        if timing:
            out["seconds"] = self.seconds
        return out


def universality_check(g: Graph, n: int, trees: Optional[list[Tree]] = None) -> SearchCertificate:
    if g.vertex_count < n:
        raise InvalidParams(f"candidate has {g.vertex_count} < {n} vertices")
    t0 = time.perf_counter()
    family = tree_order(enumerate_trees(n)) if trees is None else trees
    masks = host_masks(g)
    maps = []
    for t in family:
        m = subgraph_embed(t.underlying, g, masks=masks)
        if m is None:
            return SearchCertificate(g, False, [], t, time.perf_counter() - t0)
        maps.append((t, m))
    return SearchCertificate(g, True, maps, None, time.perf_counter() - t0)


def _screen(args) -> SearchCertificate:
    g, n = args
    return universality_check(g, n)


def find_universal(n: int, source: Optional[Iterable[Graph]] = None, jobs: int = 1, chunk: int = 0) -> SearchCertificate:
    """First candidate (in source order) universal for all trees on ``n`` vertices.

    Raises ``Exhausted`` when no candidate qualifies.
    """
    if source is None:
        source = enumerate_stacked(n)
    it = iter(source)
    if jobs <= 1:
        for g in it:
            cert = universality_check(g, n)
            if cert.universal:
                return cert
        raise Exhausted(f"no universal candidate for n={n}")
    chunk = chunk or 4 * jobs
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        while True:
            batch = list(islice(it, chunk))
            if not batch:
                break
            for cert in pool.map(_screen, [(g, n) for g in batch]):
                if cert.universal:
                    return cert
    raise Exhausted(f"no universal candidate for n={n}")
