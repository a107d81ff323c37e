"""A planar host on floor(3n/2) vertices for any three n-vertex trees, and
evaluators for the matching impossibility and lower-bound statements.

The host places labels on three rays from a common centre.  Each tree is laid
out along a line made of two of the rays, in DFS preorder, which is a one-page
book embedding; the three pages sit in disjoint sectors, so the union is
planar.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import EmbeddingFailed, InvalidParams, SizeMismatch
from .graph import EmbeddingMap, Graph, verify_embedding
from .planarity import is_planar
from .trees import Tree, caterpillar, crossing_free, dfs_preorder

CATERPILLAR_TRIPLE_48 = (48, (1, 2, 8))
"""``(n, (k1, k2, k3))``: no planar graph on n vertices contains all three C_{n,k}."""


def host_sequences(n: int) -> tuple[list[int], list[int], list[int]]:
    """Label sequences (1-based) along the three spines."""
    if n < 1:
        raise InvalidParams("n must be positive")
    top = 3 * n // 2
    s1 = list(range(1, n + 1))
    s2 = list(range(n, n // 2, -1)) + list(range(n + 1, top + 1))
    s3 = list(range(1, (n + 1) // 2 + 1)) + list(range(n + 1, top + 1))
    return s1, s2, s3


@dataclass(frozen=True)
class TripleHost:
    host: Graph
    maps: tuple[EmbeddingMap, EmbeddingMap, EmbeddingMap]
    sequences: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]

    def to_dict(self) -> dict:
        from .codecs import graph6_encode

        return {
            "host": graph6_encode(self.host),
            "vertices": self.host.vertex_count,
            "maps": [list(m.image) for m in self.maps],
            "sequences": [list(s) for s in self.sequences],
        }


def build_three_tree_host(t1: Tree, t2: Tree, t3: Tree, verify: bool = True) -> TripleHost:
    trees = (t1, t2, t3)
    n = t1.vertex_count
    if any(t.vertex_count != n for t in trees):
        raise SizeMismatch("the three trees must have the same number of vertices")
    seqs = host_sequences(n)
    maps = []
    edges = set()
    for t, seq in zip(trees, seqs):
        order = dfs_preorder(t, 0)
        image = [0] * n
        for p, v in enumerate(order):
            image[v] = seq[p] - 1
        maps.append(EmbeddingMap(n, tuple(image)))
        for a, b in t.edges():
            x, y = image[a], image[b]
            edges.add((min(x, y), max(x, y)))
    host = Graph(3 * n // 2, edges)
    result = TripleHost(host, tuple(maps), tuple(tuple(s) for s in seqs))
    if verify:
        check_triple(result, trees)
    return result


def check_triple(th: TripleHost, trees) -> None:
    for t, m, seq in zip(trees, th.maps, th.sequences):
        if not verify_embedding(t.underlying, th.host, m):
            raise EmbeddingFailed("a tree map does not verify")
        position = {label - 1: p for p, label in enumerate(seq)}
        pos = [position[m.image[v]] for v in range(t.vertex_count)]
        if not crossing_free(t.edges(), pos):
            raise EmbeddingFailed("a tree layout is not one-page")
    if not is_planar(th.host):
        raise EmbeddingFailed("union of the three layouts is not planar")


def caterpillar_triple(n: int, ks=(1, 2, 8)) -> tuple[Tree, Tree, Tree]:
    return tuple(caterpillar(n, k) for k in ks)  # type: ignore[return-value]


def caterpillars_infeasible(n: int, k: int) -> bool:
    """True when C_{n,1}, C_{n,2}, C_{n,k} provably share no n-vertex planar host."""
    if n < 1 or k < 1:
        raise InvalidParams("n and k must be positive")
    return k >= 5 and n % k == 0 and n % 2 == 0 and n >= 6 * k * k


@dataclass(frozen=True)
class LowerBoundParams:
    n: int
    k: int
    l: int  # noqa: E741

    def __post_init__(self):
        if min(self.n, self.k, self.l) < 1:
            raise InvalidParams("n, k, l must be positive integers")
        if not 1 < self.k < self.l - 2:
            raise InvalidParams(f"need 1 < k < l - 2, got k={self.k}, l={self.l}")


def caterpillar_lower_bound(n, k=None, l=None) -> Fraction:  # noqa: E741
    """Least size of a planar host of C_{n,1}, C_{n,k}, C_{n,l}, as an exact rational.

    Accepts either a ``LowerBoundParams`` or three integers.
    """
    p = n if isinstance(n, LowerBoundParams) else LowerBoundParams(n, k, l)
    n, k, l = p.n, p.k, p.l  # noqa: E741
    return (Fraction(3, 2) - Fraction(1, k) - Fraction(k, l)) * n - (k - 1) * (l - k) - Fraction(l, 2)


def regime_params(n: int) -> LowerBoundParams:
    """k about n^(1/3), l about n^(2/3)."""
    k = max(2, round(n ** (1 / 3)))
    l = max(k + 3, round(n ** (2 / 3)))  # noqa: E741
    return LowerBoundParams(n, k, l)


def best_ratio(n: int) -> tuple[Fraction, int, int]:
    """Largest value/n of the bound over admissible ``k, l``, with its maximizer."""
    best = (Fraction(-10**9), 0, 0)
    k = 2
    while k * k * k <= 8 * n and k < n:
        # for fixed k the bound is concave in l, maximal at l = sqrt(k n / (k - 1/2))
        centre = int((k * n / (k - 0.5)) ** 0.5)
        for l in range(max(k + 3, centre - 3), centre + 4):  # noqa: E741
            v = caterpillar_lower_bound(n, k, l) / n
            if v > best[0]:
                best = (v, k, l)
        k += 1
    return best
