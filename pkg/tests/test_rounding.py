import random
from math import ceil

import pytest
from hypothesis import given, strategies as st

from conftest import F, cycle, fam
from lamtree.harness import (enumerate_spanning_trees, gen_graph, mixture_case, random_costs,
                             tree_mixture)
from lamtree.matroid import GraphicMatroid, refine_along_family
from lamtree.model import LaminarFamily, LaminarSet, cut_edges, weight
from lamtree.oracles import PreconditionError
from lamtree.reduction import reduce
from lamtree.rounding import lam_constrained_basis, round_aligned


def test_no_family_gives_mst():
    for seed in range(20):
        rng = random.Random(seed)
        g = gen_graph(rng.randint(3, 8), rng.randint(0, 8), seed)
        c = random_costs(g, rng)
        res = lam_constrained_basis(g, GraphicMatroid(g), LaminarFamily(), c)
        mst = min(sum(c[i] for i in T) for T in enumerate_spanning_trees(g))
        assert sum(c[i] for i in res.basis) == mst == res.root_value


def test_four_cycle_with_refined_matroid():
    g = cycle(4)
    f = fam({0, 1}, bounds={0: 1})
    m = refine_along_family(GraphicMatroid(g), g, f)
    res = lam_constrained_basis(g, m, f, {i: 0 for i in range(4)}, verify_vertices=True)
    feasible = [T for T in enumerate_spanning_trees(g) if 0 in T and len(T & {1, 3}) == 1]
    assert len(feasible) == 2
    assert res.basis in feasible
    assert len(res.basis & cut_edges(g, {0, 1})) <= 3


def test_integral_point_returns_its_support():
    g = cycle(5)
    x = {0: F(1), 1: F(1), 2: F(0), 3: F(1), 4: F(1)}
    f = fam({0, 1}, {3}, range(5))
    res = round_aligned(g, f, x, {0: 1, 1: 1, 2: 5, 3: 1, 4: 1})
    assert res.basis == frozenset({0, 1, 3, 4})


def test_rejects_unaligned_point():
    g = cycle(4)
    with pytest.raises(PreconditionError):
        round_aligned(g, fam({0, 1}), {i: F(3, 4) for i in range(4)}, {})


def _check(g, f, x, c, res):
    T = res.basis
    assert sum(c[i] for i in T) <= sum(c[i] * x[i] for i in g.edge_ids)
    for s in f:
        d = cut_edges(g, s.members)
        assert len(T & d) <= 2 * ceil(weight(x, d)) + 1
    assert res.depth <= len(g.edges) + len(f)


@given(st.integers(0, 10**6))
def test_degree_bounds_with_drops(seed):
    # singletons are aligned with every point, so this exercises the drop rules
    rng = random.Random(seed)
    n = rng.randint(4, 9)
    g = gen_graph(n, rng.randint(n, 3 * n), seed)
    x = tree_mixture(g, rng.randint(2, 6), rng)
    f = LaminarFamily(tuple(LaminarSet(v, frozenset([v])) for v in range(n)))
    c = random_costs(g, rng)
    res = round_aligned(g, f, x, c, verify_vertices=True)
    _check(g, f, x, c, res)


@given(st.integers(0, 10**6))
def test_reduced_points_round_within_bounds(seed):
    g, f, x, c = mixture_case(seed)
    red = reduce(g, f, x, F(93, 20))
    res = round_aligned(g, red.new_family, red.aligned_point, c, verify_vertices=True)
    _check(g, red.new_family, red.aligned_point, c, res)


def test_log_records_bound_updates():
    g = cycle(4)
    x = {0: F(1), 1: F(1, 2), 2: F(1), 3: F(1, 2)}
    f = fam({0, 1}, range(4))
    res = round_aligned(g, f, x, {0: 0, 1: 2, 2: 0, 3: 1})
    rules = [s.rule for s in res.log]
    assert rules[-1] == "empty" and "contract" in rules
    cuts = {s.id: cut_edges(g, s.members) for s in f.with_root(4)}
    for step in res.log:
        if step.rule == "contract":
            touched = {sid for sid, d in cuts.items() if step.edge in d}
            assert set(step.bounds_changed) == touched
            assert all(new == old - 1 for old, new in step.bounds_changed.values())
