import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from treehost.embedder import (
    EmbedStats,
    EmbedTask,
    embed_kary,
    embed_marked,
    embed_universal,
    kary_depth,
    obligations,
    universal_depth,
)
from treehost.errors import CapacityExceeded, InvalidParams
from treehost.graph import Graph, verify_embedding
from treehost.stacked import OUTERPLANAR, TRIANGULATED, build_host, size_s
from treehost.subgraph import subgraph_embed
from treehost.trees import (
    MarkedTree,
    Tree,
    enumerate_trees,
    path_tree,
    random_tree,
    star,
)


def interior_only(task, emb):
    return all(task.target.contains(x) for x in emb.image)


def test_single_vertex_two_marks():
    host = build_host(0, 2, OUTERPLANAR)
    task = EmbedTask(MarkedTree(Tree(Graph(1)), (0, 0)), host.root)
    emb = embed_marked(task, host)
    assert emb.image == (host.root["c"],)
    assert host.has_edge(emb[0], host.root["o1"]) and host.has_edge(emb[0], host.root["o2"])


def test_marked_path_agrees_with_oracle():
    host = build_host(2, 2, OUTERPLANAR, materialize=True)
    task = EmbedTask(MarkedTree(path_tree(4), (0, 3)), host.root)
    # oracle: same obligations; o1 and o2 are occupied by two isolated pinned vertices
    keep = sorted({host.root["o1"], host.root["o2"]} | set(range(host.root.start, host.vertex_count)))
    sub, ids = host.graph.subgraph(keep)
    pos = {v: i for i, v in enumerate(ids)}
    cons = [(c.pattern_vertex, pos[c.required_host_neighbor]) for c in obligations(task)]
    pattern = Graph(6, path_tree(4).edges())
    pins = [(4, pos[host.root["o1"]]), (5, pos[host.root["o2"]])]
    assert subgraph_embed(pattern, sub, pins=pins, adjacency_constraints=cons) is not None
    emb = embed_marked(task, host)
    assert interior_only(task, emb)


def test_star_with_marked_centre():
    host = build_host(3, 1, OUTERPLANAR)
    task = EmbedTask(MarkedTree(star(8), (0,)), host.root)
    emb = embed_marked(task, host)
    assert verify_embedding(star(8).underlying, host, emb, adjacency_constraints=obligations(task))


def test_task_validation():
    host = build_host(2, 1, OUTERPLANAR)
    with pytest.raises(InvalidParams):
        EmbedTask(MarkedTree(path_tree(3), (0, 2)), host.root)
    with pytest.raises(CapacityExceeded):
        embed_marked(EmbedTask(MarkedTree(path_tree(5), (0,)), host.root), host)


def test_universal_trivial_and_ten():
    host, emb = embed_universal(Tree(Graph(1)))
    assert host.depth == 0 and len(emb.image) == 1
    host = build_host(4, 1, OUTERPLANAR)
    for t in enumerate_trees(10):
        _, emb = embed_universal(t, host)
        assert verify_embedding(t.underlying, host, emb)


def test_universal_host_sizes():
    for d in range(1, 11):
        host, _ = embed_universal(path_tree(2**d))
        assert host.depth == d and host.vertex_count == size_s(d, 1, OUTERPLANAR) + 1


def test_exhaustive_small_trees_all_cases():
    stats = EmbedStats()
    for flavor in (TRIANGULATED, OUTERPLANAR):
        for n in range(1, 13):
            d = universal_depth(n)
            h1, h2 = build_host(d, 1, flavor), build_host(d, 2, flavor)
            for t in enumerate_trees(n):
                embed_marked(EmbedTask(MarkedTree(t, (0,)), h1.root), h1, stats=stats)
                embed_marked(EmbedTask(MarkedTree(t, (0, n - 1)), h2.root), h2, stats=stats)
    assert stats.case1 and stats.case2 and stats.case3


@given(st.integers(1, 300), st.integers(0, 2**32), st.sampled_from([TRIANGULATED, OUTERPLANAR]), st.integers(0, 3))
def test_random_marked_tasks(n, seed, flavor, marks):
    t = random_tree(n, seed)
    r = random.Random(seed)
    chosen = tuple(r.randrange(n) for _ in range(min(marks, 2)))
    variant = max(1, len(chosen))
    host = build_host(universal_depth(n), variant, flavor)
    task = EmbedTask(MarkedTree(t, chosen), host.root)
    emb = embed_marked(task, host)
    assert interior_only(task, emb)


@pytest.mark.parametrize("k,h,d", [(3, 0, 1), (3, 2, 3), (4, 2, 5)])
def test_kary_examples(k, h, d):
    assert kary_depth(k, h) == d
    host, emb, t = embed_kary(k, h)
    assert host.depth == d and emb[0] == host.root["c"]
    assert verify_embedding(t.underlying, host, emb)
