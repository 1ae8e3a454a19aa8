import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from conftest import F, cycle, two_triangles
from lamtree.harness import (brute_forest_separation, brute_min_partition, complete_graph,
                             gen_graph, random_spanning_tree, tree_mixture)
from lamtree.matroid import GraphicMatroid, PartitionMatroid, direct_sum
from lamtree.model import Graph, InputError, Partition, inside_edges, weight
from lamtree.oracles import (PreconditionError, dominated_base_point, greedy_forest_point,
                             is_well_connected, min_partition, partition_value,
                             separate_base_polytope, separate_dominant, separate_forest)


def rational_weights(g, rng, big=3):
    return {i: Fraction(rng.randint(0, 4 * big), rng.randint(1, 8)) for i in g.edge_ids}


def test_min_partition_examples():
    P, v = min_partition(Graph(2, [(0, 0, 1)]), {0: F(2, 5)})
    assert v == F(-3, 5) and len(P) == 2
    tri = cycle(3)
    P, v = min_partition(tri, {i: F(1) for i in range(3)})
    assert v == 0 and len(P) == 1
    P, v = min_partition(cycle(4), {i: F(1, 4) for i in range(4)})
    assert v == -2 and len(P) == 4


def test_min_partition_examples_match_brute_force():
    cases = [(Graph(2, [(0, 0, 1)]), {0: F(2, 5)}), (cycle(3), {i: F(1) for i in range(3)}),
             (cycle(4), {i: F(1, 4) for i in range(4)})]
    for g, w in cases:
        assert min_partition(g, w)[1] == brute_min_partition(g, w)[1]


@given(st.integers(0, 10**6))
def test_min_partition_against_brute_force(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 7)
    g = gen_graph(n, rng.randint(0, 2 * n), seed)
    w = rational_weights(g, rng)
    P, value = min_partition(g, w)
    Pb, vb = brute_min_partition(g, w)
    Pd, vd = min_partition(g, w, method="dp")
    assert value == vb == vd
    assert partition_value(g, w, P) == value
    assert partition_value(g, w, Pd) == value


def test_min_partition_rejects_bad_input():
    with pytest.raises(InputError):
        min_partition(cycle(3), {0: F(-1)})


def test_separate_dominant_examples():
    g = cycle(4)
    assert separate_dominant(g, {0: 1, 1: 1, 2: 1, 3: 0}) is None
    P = separate_dominant(g, {i: F(1, 4) for i in range(4)})
    assert P is not None and len(P) == 4
    assert separate_dominant(g, {i: F(3, 4) for i in range(4)}) is None


def test_separate_forest_examples():
    g = cycle(4)
    assert separate_forest(g, {i: F(1) for i in range(4)}) == frozenset(range(4))
    assert separate_forest(g, {i: F(3, 4) for i in range(4)}) is None


@given(st.integers(0, 10**6))
def test_separate_forest_against_subsets(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 8)
    g = gen_graph(n, rng.randint(0, 2 * n), seed)
    x = {i: Fraction(rng.randint(0, 6), rng.randint(1, 6)) for i in g.edge_ids}
    S = separate_forest(g, x)
    brute = brute_forest_separation(g, x)
    if brute is None:
        assert S is None
    else:
        assert S is not None
        assert weight(x, inside_edges(g, S)) - (len(S) - 1) == brute[1]


def test_separate_base_polytope_examples():
    g = cycle(4)
    m = GraphicMatroid(g)
    assert separate_base_polytope(m, {0: 1, 1: 1, 2: 1, 3: 0}) is None
    assert separate_base_polytope(m, {i: F(1) for i in range(4)}) == frozenset(range(4))
    assert separate_base_polytope(m, {i: F(1, 2) for i in range(4)}) == frozenset(range(4))


@given(st.integers(0, 10**6))
def test_direct_sum_separation_against_brute_force(seed):
    rng = random.Random(seed)
    g = gen_graph(rng.randint(2, 5), rng.randint(0, 3), seed)
    shift = max(g.edge_ids) + 1
    pm = PartitionMatroid([({shift, shift + 1, shift + 2}, rng.randint(0, 2)), ({shift + 3}, 1)])
    m = direct_sum([GraphicMatroid(g), pm])
    x = {i: Fraction(rng.randint(0, 4), 4) for i in m.groundset}
    ground = sorted(m.groundset)
    worst = max((weight(x, C) - m.rank(C) for k in range(1, len(ground) + 1)
                 for C in combinations(ground, k)), default=0)
    C = separate_base_polytope(m, x)
    if worst > 0:
        assert C is not None and weight(x, C) - m.rank(C) == worst
    elif weight(x, ground) == m.rank():
        assert C is None
    else:
        assert C == m.groundset


def test_is_well_connected():
    g, x = two_triangles()
    eta = F(93, 20)
    assert not is_well_connected(g, x, range(6), eta)
    assert is_well_connected(g, x, {0, 1, 2}, eta)
    assert is_well_connected(g, x, {3, 4, 5}, eta)
    assert is_well_connected(g, x, {6}, eta)
    tree = {i: F(0) for i in g.edge_ids}
    for i in (0, 1, 3, 4, 6, 9, 10):
        tree[i] = F(1)
    assert is_well_connected(g, tree, range(8), 1)


def test_dominated_base_point_examples():
    g = cycle(4)
    assert dominated_base_point(g, {i: F(1) for i in range(4)}) == {0: 1, 1: 1, 2: 1, 3: 0}
    tree = {0: F(1), 1: F(0), 2: F(1), 3: F(1)}
    assert dominated_base_point(g, tree) == tree
    with pytest.raises(PreconditionError) as exc:
        dominated_base_point(g, {i: F(1, 4) for i in range(4)})
    assert isinstance(exc.value.witness, Partition)


@given(st.integers(0, 10**6))
def test_dominated_base_point_is_in_polytope(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 8)
    g = gen_graph(n, rng.randint(0, 2 * n), seed)
    y = tree_mixture(g, rng.randint(1, 4), rng)
    y = {i: v * Fraction(rng.randint(10, 30), 10) for i, v in y.items()}
    z = dominated_base_point(g, y)
    assert all(0 <= z[i] <= y[i] for i in g.edge_ids)
    assert sum(z.values()) == n - 1
    assert separate_forest(g, z) is None


def test_greedy_point_is_a_forest_point():
    g = complete_graph(5)
    y = greedy_forest_point(g, {i: F(2, 3) for i in g.edge_ids})
    assert separate_forest(g, y) is None and sum(y.values()) == 4
