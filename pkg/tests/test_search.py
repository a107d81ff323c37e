import random

import networkx as nx
import pytest

from treehost.canon import canonical_form
from treehost.codecs import dumps
from treehost.errors import Exhausted, InvalidParams
from treehost.graph import Graph, complete_graph, path_graph
from treehost.planarity import faces, is_planar
from treehost.search import (
    enumerate_stacked,
    enumerate_triangulations,
    find_universal,
    is_stacked,
    tree_order,
    universality_check,
)
from treehost.stacked import build_uniform
from treehost.trees import enumerate_trees

OCTAHEDRON = Graph(6, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (4, 1), (5, 1), (5, 2), (5, 3), (5, 4)])


def brute_three_tree(g):
    G = g.to_networkx()
    n = g.vertex_count
    if n < 4:
        return n == 3 and g.edge_count == 3
    return nx.is_connected(G) and g.edge_count == 3 * n - 6 and nx.is_chordal(G) and max(len(c) for c in nx.find_cliques(G)) == 4


def stacked_by_rotation(n):
    """Stacked triangulations found by stacking into faces read off a fresh planar embedding."""
    level = {canonical_form(complete_graph(4)): complete_graph(4)}
    for m in range(5, n + 1):
        nxt = {}
        for g in level.values():
            for f in faces(is_planar(g, witness=True)[1]):
                h = Graph(m, list(g.edges()) + [(x, m - 1) for x in f])
                nxt.setdefault(canonical_form(h), h)
        level = nxt
    return set(level)


def test_is_stacked_examples():
    assert is_stacked(complete_graph(4))
    assert is_stacked(complete_graph(3))
    assert not is_stacked(OCTAHEDRON)
    assert all(is_stacked(build_uniform(d).graph) for d in range(6))
    assert not is_stacked(path_graph(5))


def test_nonplanar_three_tree_rejected():
    # three vertices stacked on one triangle: a 3-tree containing K_{3,3}
    g = Graph(6, list(complete_graph(3).edges()) + [(x, v) for v in (3, 4, 5) for x in range(3)])
    assert g.edge_count == 12 and not is_planar(g)
    assert not is_stacked(g)


def test_is_stacked_matches_brute_force():
    for n in range(4, 9):
        for g, _ in enumerate_triangulations(n):
            assert is_stacked(g) == brute_three_tree(g)


def test_peeling_order_does_not_matter():
    r = random.Random(4)
    for n in range(4, 11):
        for g, _ in enumerate_triangulations(n):
            first = is_stacked(g)
            assert all(is_stacked(g, r) == first for _ in range(3))


def test_triangulation_counts():
    assert [len(enumerate_triangulations(n)) for n in range(4, 11)] == [1, 1, 2, 5, 14, 50, 233]


def test_enumerate_stacked():
    assert [sum(1 for _ in enumerate_stacked(n)) for n in (4, 5)] == [1, 1]
    assert next(enumerate_stacked(4)) == complete_graph(4)
    for n in range(5, 9):
        listed = {canonical_form(g) for g in enumerate_stacked(n)}
        assert listed == stacked_by_rotation(n)
        assert listed == {canonical_form(g) for g, _ in enumerate_triangulations(n) if brute_three_tree(g)}
    with pytest.raises(InvalidParams):
        list(enumerate_stacked(2))


def test_universality_examples():
    five = next(enumerate_stacked(5))
    assert universality_check(five, 5).universal
    assert universality_check(complete_graph(4), 4).universal
    g = OCTAHEDRON
    cert = universality_check(g, 6)
    assert not cert.universal and cert.failing.max_degree() == 5
    assert cert.verify()


def test_hardest_first_keeps_verdicts():
    r = random.Random(6)
    for n in range(4, 9):
        trees = list(enumerate_trees(n))
        for g in enumerate_stacked(n):
            shuffled = trees[:]
            r.shuffle(shuffled)
            a = universality_check(g, n)
            b = universality_check(g, n, shuffled)
            assert a.universal == b.universal
            assert a.verify() and b.verify()


def test_tree_order():
    ordered = tree_order(enumerate_trees(7))
    assert ordered[0].max_degree() == 6
    keys = [(-t.max_degree(), -t.diameter()) for t in ordered]
    assert keys == sorted(keys)


def test_find_universal_small():
    cert = find_universal(5)
    assert cert.universal and cert.candidate == next(enumerate_stacked(5))
    cert = find_universal(9)
    assert cert.universal and cert.verify() and len(cert.maps) == 47
    assert is_stacked(cert.candidate)


def test_find_universal_exhausts():
    with pytest.raises(Exhausted):
        find_universal(6, [path_graph(6), path_graph(7)])


def test_parallel_matches_serial():
    serial = dumps(find_universal(8, jobs=1).to_dict())
    parallel = dumps(find_universal(8, jobs=2, chunk=3).to_dict())
    assert serial == parallel
