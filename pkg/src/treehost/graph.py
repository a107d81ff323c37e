"""Simple undirected graphs, embedding maps and the certificate checker."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Protocol, Sequence

from .errors import NonSimpleGraph


class HostLike(Protocol):
    """Anything an embedding can be checked against.

    ``Graph`` satisfies it, and so do the lazily indexed stacked hosts whose
    vertex sets are too large to materialize.
    """

    @property
    def vertex_count(self) -> int: ...

    def has_edge(self, u: int, v: int) -> bool: ...


class Graph:
    """Immutable simple graph on the dense vertex set ``0..vertex_count-1``."""

    __slots__ = ("_n", "_adj", "_m")

    def __init__(self, vertex_count: int, edges: Iterable[tuple[int, int]] = ()):
        if vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        adj: list[set[int]] = [set() for _ in range(vertex_count)]
        m = 0
        for u, v in edges:
            if u == v:
                raise NonSimpleGraph(f"self-loop at {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range for {vertex_count} vertices")
            if v not in adj[u]:
                adj[u].add(v)
                adj[v].add(u)
                m += 1
        self._n = vertex_count
        self._adj = tuple(frozenset(a) for a in adj)
        self._m = m

    @classmethod
    def from_adjacency(cls, adj: Sequence[Iterable[int]]) -> "Graph":
        return cls(len(adj), ((u, v) for u, nb in enumerate(adj) for v in nb if u < v))

    @property
    def vertex_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return self._m

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u in range(self._n) for v in self._adj[u] if u < v)

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self._n and v in self._adj[u]

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def adjacency(self) -> tuple[frozenset[int], ...]:
        return self._adj

    def relabel(self, mapping: Sequence[int], vertex_count: Optional[int] = None) -> "Graph":
        """Image of the graph under ``v -> mapping[v]``."""
        n = self._n if vertex_count is None else vertex_count
        return Graph(n, ((mapping[u], mapping[v]) for u, v in self.edges()))

    def subgraph(self, vertices: Sequence[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph, relabelled to ``0..k-1`` in the given order.

        Returns the subgraph and the list mapping new ids back to old ones.
        """
        index = {v: i for i, v in enumerate(vertices)}
        edges = [
            (index[u], index[w])
            for u in vertices
            for w in self._adj[u]
            if w in index and index[u] < index[w]
        ]
        return Graph(len(vertices), edges), list(vertices)

    def is_connected(self) -> bool:
        if self._n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in self._adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self._n

    def components(self) -> list[list[int]]:
        seen = [False] * self._n
        out = []
        for s in range(self._n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            stack = [s]
            while stack:
                v = stack.pop()
                for w in self._adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self._n))
        g.add_edges_from(self.edges())
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self._m})"


def complete_graph(n: int) -> Graph:
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, ((u, a + v) for u in range(a) for v in range(b)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


@dataclass(frozen=True)
class AdjacencyConstraint:
    """``image[pattern_vertex]`` must be a host neighbour of ``required_host_neighbor``."""

    pattern_vertex: int
    required_host_neighbor: int


@dataclass(frozen=True)
class EmbeddingMap:
    pattern_size: int
    image: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "image", tuple(self.image))
        if len(self.image) != self.pattern_size:
            raise ValueError("image length must equal pattern_size")

    def __getitem__(self, v: int) -> int:
        return self.image[v]


def _as_constraints(items) -> list[AdjacencyConstraint]:
    out = []
    for c in items or ():
        if isinstance(c, AdjacencyConstraint):
            out.append(c)
        else:
            p, h = c
            out.append(AdjacencyConstraint(int(p), int(h)))
    return out


def verify_embedding(
    pattern: Graph,
    host: HostLike,
    mapping,
    pins: Iterable[tuple[int, int]] = (),
    adjacency_constraints: Iterable = (),
) -> bool:
    """Independent certificate check; never raises on bad input."""
    image = mapping.image if isinstance(mapping, EmbeddingMap) else tuple(mapping)
    n = pattern.vertex_count
    if len(image) != n:
        return False
    hn = host.vertex_count
    for h in image:
        if not isinstance(h, int) or not 0 <= h < hn:
            return False
    if len(set(image)) != n:
        return False
    for a, b in pattern.edges():
        if not host.has_edge(image[a], image[b]):
            return False
    for p, h in pins:
        if not 0 <= p < n or image[p] != h:
            return False
    for c in _as_constraints(adjacency_constraints):
        if not 0 <= c.pattern_vertex < n:
            return False
        if not 0 <= c.required_host_neighbor < hn:
            return False
        if not host.has_edge(image[c.pattern_vertex], c.required_host_neighbor):
            return False
    return True
