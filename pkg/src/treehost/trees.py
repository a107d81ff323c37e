"""Trees: generators, free-tree enumeration and the decomposition primitives.

All tie-breaking is by smallest vertex id so that results are reproducible.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .errors import DivisibilityError
from .graph import Graph


class Tree:
    """A connected acyclic graph; thin validated wrapper over ``Graph``."""

    __slots__ = ("underlying",)

    def __init__(self, underlying: Graph):
        n = underlying.vertex_count
        if n == 0:
            raise ValueError("a tree needs at least one vertex")
        if underlying.edge_count != n - 1 or not underlying.is_connected():
            raise ValueError("graph is not a tree")
        self.underlying = underlying

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Tree":
        return cls(Graph(n, edges))

    @classmethod
    def from_parents(cls, parents: Sequence[int]) -> "Tree":
        """Build from a parent array (root has parent -1)."""
        return cls(Graph(len(parents), ((v, p) for v, p in enumerate(parents) if p >= 0)))

    def parents(self, root: int = 0) -> list[int]:
        order, parent = rooted_order(self.underlying.adjacency(), root)
        return parent_list(self.vertex_count, order, parent)

    @property
    def vertex_count(self) -> int:
        return self.underlying.vertex_count

    def __len__(self) -> int:
        return self.underlying.vertex_count

    def neighbors(self, v: int):
        return self.underlying.neighbors(v)

    def adjacency(self):
        return self.underlying.adjacency()

    def edges(self):
        return self.underlying.edges()

    def max_degree(self) -> int:
        return self.underlying.max_degree()

    def diameter(self) -> int:
        adj = self.adjacency()
        far, _ = _farthest(adj, 0)
        _, d = _farthest(adj, far)
        return d

    def __eq__(self, other):
        return isinstance(other, Tree) and self.underlying == other.underlying

    def __hash__(self):
        return hash(self.underlying)

    def __repr__(self):
        return f"Tree(n={self.vertex_count})"


@dataclass(frozen=True)
class MarkedTree:
    tree: Tree
    marks: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "marks", tuple(self.marks))
        if len(self.marks) > 2:
            raise ValueError("at most two marks")
        for m in self.marks:
            if not 0 <= m < self.tree.vertex_count:
                raise ValueError(f"mark {m} is not a vertex")


# ------------------------------------------------------------ low-level walks


def rooted_order(adj, root: int, blocked=None) -> tuple[list[int], dict[int, int]]:
    """Iterative DFS preorder from ``root`` avoiding ``blocked`` vertices."""
    parent = {root: -1}
    order = [root]
    stack = [root]
    while stack:
        v = stack.pop()
        for w in sorted(adj[v], reverse=True):
            if w in parent or (blocked is not None and w in blocked):
                continue
            parent[w] = v
            order.append(w)
            stack.append(w)
    # DFS with an explicit stack pushes in reverse; rebuild a true preorder
    return _preorder(adj, root, parent), parent


def _preorder(adj, root, parent) -> list[int]:
    out = []
    stack = [root]
    while stack:
        v = stack.pop()
        out.append(v)
        kids = [w for w in adj[v] if parent.get(w) == v and w != root]
        kids.sort(reverse=True)
        stack.extend(kids)
    return out


def parent_list(n: int, order, parent) -> list[int]:
    out = [-1] * n
    for v in order:
        out[v] = parent[v]
    return out


def _subtree_sizes(order, parent) -> dict[int, int]:
    size = dict.fromkeys(order, 1)
    for v in reversed(order):
        p = parent[v]
        if p >= 0:
            size[p] += size[v]
    return size


def _farthest(adj, s: int) -> tuple[int, int]:
    dist = {s: 0}
    frontier = [s]
    last = s
    while frontier:
        nxt = []
        for v in frontier:
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    nxt.append(w)
        if nxt:
            last = min(nxt)
        frontier = nxt
    return last, dist[last]


def component_sizes_without(adj, removed: set[int], vertices: Iterable[int]) -> list[int]:
    """Sizes of the components of the induced forest on ``vertices - removed``."""
    allowed = set(vertices) - removed
    seen: set[int] = set()
    sizes = []
    for s in sorted(allowed):
        if s in seen:
            continue
        seen.add(s)
        stack = [s]
        k = 0
        while stack:
            v = stack.pop()
            k += 1
            for w in adj[v]:
                if w in allowed and w not in seen:
                    seen.add(w)
                    stack.append(w)
        sizes.append(k)
    return sizes


# ------------------------------------------------------------- decompositions


def separator_in(adj, root: int, blocked=None) -> tuple[int, list[int], dict[int, int], dict[int, int]]:
    """Jordan separator of the component of ``root`` in the forest ``adj - blocked``.

    Returns ``(J, order, parent, size)`` for the DFS rooted at ``root``.
    """
    order, parent = rooted_order(adj, root, blocked)
    size = _subtree_sizes(order, parent)
    n = len(order)
    half = n // 2
    best = None
    for v in order:
        worst = n - size[v]
        for w in adj[v]:
            if parent.get(w) == v and w != root:
                if size[w] > worst:
                    worst = size[w]
        if worst <= half and (best is None or v < best):
            best = v
    return best, order, parent, size


def jordan_separator(t: Tree) -> int:
    """Smallest-id vertex whose removal leaves components of size <= n // 2."""
    return separator_in(t.adjacency(), 0)[0]


def median_in(adj, a: int, b: int, c: int, blocked=None) -> int:
    """Unique vertex on all three paths among ``a, b, c`` (within one component)."""
    order, parent = rooted_order(adj, a, blocked)
    on_ab = set()
    x = b
    while x != -1:
        on_ab.add(x)
        x = parent[x]
    x = c
    while x not in on_ab:
        x = parent[x]
    return x


def median_vertex(t: Tree, a: int, b: int, c: int) -> int:
    return median_in(t.adjacency(), a, b, c)


def gyarfas_path(t: Tree, v: int) -> list[int]:
    """Path from ``v`` whose removal leaves components of <= (n-1)//2 vertices."""
    return gyarfas_path_in(t.adjacency(), v)


def gyarfas_path_in(adj, v: int, blocked=None) -> list[int]:
    order, parent = rooted_order(adj, v, blocked)
    size = _subtree_sizes(order, parent)
    bound = (len(order) - 1) // 2
    path = [v]
    x = v
    while True:
        nxt = None
        for w in sorted(adj[x]):
            if parent.get(w) == x and w != v and size[w] > bound:
                nxt = w
                break
        if nxt is None:
            return path
        path.append(nxt)
        x = nxt


# ------------------------------------------------------------------ generators


def caterpillar(n: int, k: int) -> Tree:
    """C_{n,k}: spine 0..k-1 in order, each spine vertex with n/k - 1 leaves."""
    if k < 1:
        raise ValueError("k must be positive")
    if n % k:
        raise DivisibilityError(f"{k} does not divide {n}")
    if k == 1 and n < 2:
        raise ValueError("a star needs n >= 2")
    per = n // k - 1
    edges = [(i, i + 1) for i in range(k - 1)]
    nxt = k
    for s in range(k):
        for _ in range(per):
            edges.append((s, nxt))
            nxt += 1
    return Tree.from_edges(n, edges)


def kary_tree(k: int, h: int) -> Tree:
    """Complete k-ary tree of height h, vertices numbered in BFS order from 0."""
    if k < 1 or h < 0:
        raise ValueError("need k >= 1 and h >= 0")
    edges = []
    level = [0]
    nxt = 1
    for _ in range(h):
        new_level = []
        for p in level:
            for _ in range(k):
                edges.append((p, nxt))
                new_level.append(nxt)
                nxt += 1
        level = new_level
    return Tree.from_edges(nxt, edges)


def star(n: int) -> Tree:
    return caterpillar(n, 1)


def path_tree(n: int) -> Tree:
    return Tree.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def prufer_decode(seq: Sequence[int], n: int) -> Tree:
    if n == 1:
        return Tree(Graph(1))
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    w = heapq.heappop(leaves)
    edges.append((u, w))
    return Tree.from_edges(n, edges)


def random_tree(n: int, seed) -> Tree:
    """Uniform labelled tree from a uniform Prüfer sequence."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(seed)
    return prufer_decode([rng.randrange(n) for _ in range(n - 2)], n)


def dfs_preorder(t: Tree, root: int = 0) -> list[int]:
    """Preorder with children in ascending id; a one-page book layout."""
    order, _ = rooted_order(t.adjacency(), root)
    return order


def crossing_free(edges: Iterable[tuple[int, int]], position: Sequence[int]) -> bool:
    """True iff no two arcs cross when vertices sit at ``position[v]`` on a line."""
    arcs = sorted(tuple(sorted((position[a], position[b]))) for a, b in edges)
    for i, (a, b) in enumerate(arcs):
        for c, d in arcs[i + 1:]:
            if a < c < b < d:
                return False
    return True


# ---------------------------------------------------------------- enumeration


def _level_sequence_edges(levels: Sequence[int]) -> list[tuple[int, int]]:
    edges = []
    last_at: dict[int, int] = {}
    for i, lv in enumerate(levels):
        if lv > 0:
            edges.append((last_at[lv - 1], i))
        last_at[lv] = i
    return edges


def _next_rooted(seq: list[int], p: Optional[int] = None) -> Optional[list[int]]:
    if p is None:
        p = len(seq) - 1
        while seq[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while seq[q] != seq[p] - 1:
        q -= 1
    out = list(seq)
    for i in range(p, len(out)):
        out[i] = out[i - p + q]
    return out


def _split(seq: list[int]) -> tuple[list[int], list[int]]:
    # left: the first principal subtree (levels shifted up); rest: root plus the others
    m = len(seq)
    ones = 0
    for i, lv in enumerate(seq):
        if lv == 1:
            ones += 1
            if ones == 2:
                m = i
                break
    left = [lv - 1 for lv in seq[1:m]]
    rest = [0] + seq[m:]
    return left, rest


def _next_free(seq: list[int]) -> Optional[list[int]]:
    left, rest = _split(seq)
    lh, rh = max(left), max(rest)
    ok = rh >= lh
    if ok and rh == lh:
        if len(left) > len(rest) or (len(left) == len(rest) and left > rest):
            ok = False
    if ok:
        return seq
    p = len(left)
    nxt = _next_rooted(seq, p)
    if nxt is not None and seq[p] > 2:
        new_left, _ = _split(nxt)
        tail = list(range(1, max(new_left) + 2))
        nxt[len(nxt) - len(tail):] = tail
    return nxt


def enumerate_trees(n: int) -> Iterator[Tree]:
    """Every unlabeled tree on ``n`` vertices exactly once.

    Canonical level sequences in the Wright–Richmond–Odlyzko–McKay order:
    each tree is visited rooted at its centre with its largest principal
    subtree constrained, so no isomorphism test is needed.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        yield Tree(Graph(1))
        return
    if n == 2:
        yield Tree.from_edges(2, [(0, 1)])
        return
    seq: Optional[list[int]] = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while seq is not None:
        seq = _next_free(seq)
        if seq is None:
            break
        yield Tree.from_edges(n, _level_sequence_edges(seq))
        seq = _next_rooted(seq)


FREE_TREE_COUNTS = (1, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159, 7741, 19320, 48629, 123867, 317955)
"""``FREE_TREE_COUNTS[n]`` is the number of unlabeled trees on n vertices, n = 0..19."""
