import json
import random

import pytest

from treehost.errors import AllocationInfeasible, ResourceLimit, UnknownAnchor
from treehost.graph import complete_graph
from treehost.planarity import faces, is_outerplanar, is_planar
from treehost.stacked import (
    OUTERPLANAR,
    TRIANGULATED,
    allocate,
    build_host,
    build_uniform,
    layout_size,
    pool_at,
    size_s,
)

FLAVORS = [(v, f) for f in (TRIANGULATED, OUTERPLANAR) for v in (1, 2)]


def bounded_faces(g):
    return len(faces(is_planar(g, witness=True)[1])) - 1


@pytest.mark.parametrize("d", range(7))
def test_uniform_counts(d):
    host = build_uniform(d)
    g = host.graph
    assert g.vertex_count == (3**d + 5) // 2
    assert bounded_faces(g) == 3**d
    inner = set(range(3, g.vertex_count))
    for o in range(3):
        assert len(g.neighbors(o) & inner) == 2**d - 1


def test_uniform_examples():
    assert build_uniform(0).graph == complete_graph(3)
    g = build_uniform(3).graph
    assert g.vertex_count == 16 and bounded_faces(g) == 27


def test_size_examples():
    assert [size_s(1, v, f) for v, f in FLAVORS] == [10, 17, 6, 11]
    assert all(size_s(0, v, f) == 1 for v, f in FLAVORS)
    assert build_host(0, 1, TRIANGULATED, materialize=True).graph == complete_graph(4)


def test_recurrences_match_layout():
    for v, f in FLAVORS:
        for d in range(12):
            assert size_s(d, v, f) == layout_size(f, v, d)


def test_triangulated_growth_ratio_settles():
    limit = size_s(60, 1, TRIANGULATED) / 7**60
    assert abs(size_s(15, 1, TRIANGULATED) / 7**15 / limit - 1) < 0.05


@pytest.mark.parametrize("v,f", FLAVORS)
def test_built_hosts(v, f):
    for d in range(5):
        host = build_host(d, v, f, materialize=True)
        g = host.graph
        assert host.interior_count == size_s(d, v, f)
        if f == TRIANGULATED:
            assert g.edge_count == 3 * g.vertex_count - 6 and is_planar(g)
        else:
            assert is_outerplanar(g)


@pytest.mark.parametrize("v,f", FLAVORS)
def test_lazy_adjacency_matches_materialized(v, f):
    host = build_host(4, v, f, materialize=True)
    lazy = build_host(4, v, f)
    r = random.Random(1)
    n = host.vertex_count
    for _ in range(3000):
        a, b = r.randrange(n), r.randrange(n)
        assert lazy.has_edge(a, b) == host.graph.has_edge(a, b)
    for a, b in host.graph.edges():
        assert lazy.has_edge(a, b)


@pytest.mark.parametrize("v,f", FLAVORS)
def test_sibling_copies_are_disjoint(v, f):
    host = build_host(4, v, f, materialize=True)
    for c in host.copies():
        kids = c.children
        spans = [set(range(k.start, k.end)) for k in kids]
        for i in range(len(kids)):
            for j in range(i + 1, len(kids)):
                assert not spans[i] & spans[j]
        if c.depth > 0:
            chain = c.chain_child
            assert chain.variant == 1 and chain.depth == c.depth - 1 and chain["o1"] == c["o1"]


def test_registry_dump_shape():
    host = build_host(2, 2, TRIANGULATED, materialize=True)
    doc = json.loads(host.registry_json())
    first = doc["copies"][0]
    assert set(first) == {"id", "depth", "variant", "roles", "children"}
    assert first["depth"] == 2 and first["variant"] == 2
    assert {"o1", "o2", "o3", "c", "c_r"} <= set(first["roles"])
    assert len(doc["copies"]) == host.copy_count()


def test_pools():
    for f in (TRIANGULATED, OUTERPLANAR):
        h1 = build_host(3, 1, f)
        c = h1.root["c"]
        shape = sorted((p.depth, p.variant) for p in pool_at(h1, c))
        # the trim trades one top copy for a telescope of depths 0..d-2
        assert shape == ([(2, 1)] * 4 if f == TRIANGULATED else [(0, 1), (1, 1)] + [(2, 1)] * 3)
        h2 = build_host(3, 2, f)
        top = [p for p in pool_at(h2, h2.root["c"]) if p.depth == 2]
        assert sorted(p.variant for p in top) == ([1, 1, 1, 2, 2] if f == TRIANGULATED else [1, 1, 2, 2])
    h1 = build_host(3, 1, TRIANGULATED)
    c = h1.root["c"]
    reserved = frozenset(p.id for p in pool_at(h1, c))
    rest = pool_at(h1, c, reserved)
    assert rest and all(p.depth < 2 for p in rest)


def test_unknown_anchor():
    with pytest.raises(UnknownAnchor):
        build_host(2, 1, TRIANGULATED).locate(10**9)


def test_allocate_exact_fit():
    host = build_host(3, 1, TRIANGULATED)
    slots = [p for p in pool_at(host, host.root["c"]) if p.depth == 2]
    got = allocate([2, 2, 2, 2], slots)
    assert sorted(g.id for g in got) == sorted(s.id for s in slots)


def test_allocate_splits_one_slot():
    host = build_host(2, 1, TRIANGULATED)
    a, b = [p for p in pool_at(host, host.root["c"]) if p.depth == 1][:2]
    got = allocate([1, 0, 0], [a, b])
    assert got[0] == a
    spans = [set(range(g.start, g.end)) for g in got]
    assert all(b.contains(g.start) for g in got[1:])
    assert not spans[1] & spans[2]
    with pytest.raises(AllocationInfeasible):
        allocate([1, 1, 1], [a, b])


def test_cap_applies_to_materialization(monkeypatch):
    monkeypatch.setenv("TREEHOST_MAX_VERTICES", "100")
    host = build_host(6, 1, OUTERPLANAR)
    assert host.vertex_count > 100 and host.has_edge(0, host.root["c"])
    with pytest.raises(ResourceLimit):
        host.graph  # noqa: B018
