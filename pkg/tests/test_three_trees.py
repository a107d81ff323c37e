from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from treehost.errors import InvalidParams, SizeMismatch
from treehost.planarity import is_planar
from treehost.three_trees import (
    CATERPILLAR_TRIPLE_48,
    LowerBoundParams,
    best_ratio,
    build_three_tree_host,
    caterpillar_triple,
    host_sequences,
    regime_params,
    caterpillars_infeasible,
    caterpillar_lower_bound,
)
from treehost.trees import enumerate_trees, path_tree, random_tree


def test_sequences_examples():
    s1, s2, s3 = host_sequences(8)
    assert s1 == list(range(1, 9))
    assert s2 == [8, 7, 6, 5, 9, 10, 11, 12]
    assert s3 == [1, 2, 3, 4, 9, 10, 11, 12]
    assert host_sequences(1) == ([1], [1], [1])
    for n in range(1, 101):
        assert all(len(s) == n for s in host_sequences(n))


def test_two_vertex_paths():
    th = build_three_tree_host(path_tree(2), path_tree(2), path_tree(2))
    assert th.host.vertex_count == 3


def test_size_mismatch():
    with pytest.raises(SizeMismatch):
        build_three_tree_host(path_tree(2), path_tree(3), path_tree(2))


def test_caterpillar_triple():
    n, ks = CATERPILLAR_TRIPLE_48
    th = build_three_tree_host(*caterpillar_triple(n, ks))
    assert th.host.vertex_count == 72 and is_planar(th.host)


def test_all_five_vertex_triples():
    trees = list(enumerate_trees(5))
    for a in trees:
        for b in trees:
            for c in trees:
                assert build_three_tree_host(a, b, c).host.vertex_count == 7


@given(st.integers(1, 150), st.integers(0, 2**32))
def test_random_triples(n, seed):
    th = build_three_tree_host(*(random_tree(n, seed + i) for i in range(3)))
    assert th.host.vertex_count == 3 * n // 2


def test_caterpillars_infeasible():
    assert caterpillars_infeasible(150, 5)
    assert not caterpillars_infeasible(148, 5)
    assert not caterpillars_infeasible(48, 8)


def test_lower_bound_examples():
    assert caterpillar_lower_bound(100, 2, 5) == Fraction(109, 2)
    assert caterpillar_lower_bound(LowerBoundParams(100, 2, 5)) == Fraction(109, 2)
    with pytest.raises(InvalidParams):
        LowerBoundParams(10, 3, 4)


def test_lower_bound_below_upper_bound():
    for n in range(10, 400, 7):
        for k in range(2, 12):
            for l in range(k + 3, min(n, 60) + 1):  # noqa: E741
                assert caterpillar_lower_bound(n, k, l) <= 3 * n // 2


def test_lower_bound_regime_true_values():
    # in the k ~ n^(1/3), l ~ n^(2/3) regime the (k-1)(l-k) term is of order n
    p = regime_params(10**6)
    assert (p.k, p.l) == (100, 10000)
    assert float(caterpillar_lower_bound(p) / p.n) == pytest.approx(0.4949, abs=1e-6)
    value, k, l = best_ratio(10**6)  # noqa: E741
    assert (k, l) == (23, 1011)
    assert float(value) == pytest.approx(1.41153, abs=1e-5)
