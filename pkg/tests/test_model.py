import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import cycle, fam
from lamtree.harness import gen_graph, gen_laminar
from lamtree.model import (Graph, InputError, Instance, LaminarFamily, Partition, as_rational,
                           contract_sets, cut_edges, delta_partition, format_rational, induced,
                           inside_edges, is_spanning_tree, validate_laminar)


def test_rationals_parse_exactly():
    assert as_rational("3/6") == Fraction(1, 2)
    assert as_rational(7) == 7
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-3, 5)) == "-3/5"
    with pytest.raises(InputError):
        as_rational(0.5)
    with pytest.raises(InputError):
        as_rational("1/0")


def test_graph_rejects_loops_and_duplicate_ids():
    with pytest.raises(InputError):
        Graph(2, [(0, 1, 1)])
    with pytest.raises(InputError):
        Graph(2, [(0, 0, 1), (0, 1, 0)])
    g = Graph(2, [(5, 0, 1), (9, 1, 0)])  # parallel edges are fine
    assert g.edge_ids == [5, 9]


def test_validate_laminar_examples():
    assert validate_laminar([{0, 1}, {0, 1, 2}, {3}]) is None
    assert validate_laminar([{0, 1}, {1, 2}]) == (frozenset({0, 1}), frozenset({1, 2}))
    with pytest.raises(InputError):
        fam({0, 1}, {1, 2})


def test_generated_families_are_laminar():
    for seed in range(500):
        f = gen_laminar(8, seed, max_depth=3)
        sets = [s.members for s in f]
        pairwise = all(not (a & b) or a <= b or b <= a for a in sets for b in sets)
        assert pairwise and validate_laminar(f) is None


def test_cut_edges_examples():
    g = cycle(4)
    assert cut_edges(g, {0, 1}) == {1, 3}
    assert cut_edges(g, range(4)) == set()
    with pytest.raises(InputError):
        cut_edges(g, {7})


@given(st.integers(0, 10**6), st.integers(3, 9))
def test_cut_edges_matches_definition(seed, n):
    rng = random.Random(seed)
    g = gen_graph(n, rng.randint(0, n), seed)
    S = {v for v in range(n) if rng.random() < 0.5}
    expect = {e.id for e in g.edges if (e.u in S) != (e.v in S)}
    assert cut_edges(g, S) == expect
    if S and len(S) < n:
        P = Partition([S, set(range(n)) - S])
        assert delta_partition(g, P) == expect


def test_induced_examples():
    g = cycle(4)
    h = induced(g, {0, 1})
    assert h.n == 2 and h.edge_ids == [0]
    assert induced(g, range(4)).edge_ids == g.edge_ids
    tri = Graph(4, [(0, 0, 1), (1, 1, 2), (2, 2, 0), (3, 2, 3)])
    assert induced(tri, {0, 1, 2}).edge_ids == [0, 1, 2]


def test_contract_examples():
    g = cycle(4)
    h, mapping = contract_sets(g, [{0, 1}])
    assert h.n == 3 and sorted(h.edge_ids) == [1, 2, 3]
    assert mapping[0] == mapping[1]
    h, _ = contract_sets(g, [range(4)])
    assert h.n == 1 and h.edges == ()
    with pytest.raises(InputError):
        contract_sets(g, [{0, 1}, {1, 2}])


def test_contract_keeps_parallel_edges():
    # two triangles joined by three edges become a 2-vertex multigraph
    g = Graph(6, [(0, 0, 1), (1, 1, 2), (2, 2, 0), (3, 3, 4), (4, 4, 5), (5, 5, 3),
                  (6, 0, 3), (7, 1, 4), (8, 2, 5)])
    h, _ = contract_sets(g, [{0, 1, 2}, {3, 4, 5}])
    assert h.n == 2 and sorted(h.edge_ids) == [6, 7, 8]


@given(st.integers(0, 10**6))
def test_contract_then_induce_bookkeeping(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 9)
    g = gen_graph(n, rng.randint(0, 2 * n), seed)
    block = set(rng.sample(range(n), rng.randint(1, n)))
    h, mapping = contract_sets(g, [block])
    assert set(h.edge_ids) == set(g.edge_ids) - inside_edges(g, block)
    keep = {mapping[v] for v in range(n) if rng.random() < 0.7} or {0}
    sub = induced(h, keep)
    expect = {e.id for e in h.edges if e.u in keep and e.v in keep}
    assert set(sub.edge_ids) == expect


def test_delta_partition_examples():
    g = cycle(4)
    assert delta_partition(g, Partition([{0}, {1}, {2}, {3}])) == {0, 1, 2, 3}
    assert delta_partition(g, Partition([range(4)])) == set()


def test_partition_rejects_overlap_and_empty():
    with pytest.raises(InputError):
        Partition([{0, 1}, {1}])
    with pytest.raises(InputError):
        Partition([{0}, set()])


def test_instance_adds_root_and_checks_eta():
    g = cycle(4)
    inst = Instance(g, fam({0, 1}, bounds={0: 1}), {i: 1 for i in range(4)})
    assert frozenset(range(4)) in {s.members for s in inst.family}
    assert inst.bounds()[0] == 1
    with pytest.raises(InputError):
        Instance(g, fam({0}), {}, eta=2)
    with pytest.raises(InputError):
        Instance(Graph(3, [(0, 0, 1)]), LaminarFamily(), {})
    with pytest.raises(InputError):
        Instance(g, LaminarFamily(), {0: -1})


def test_spanning_tree_check():
    g = cycle(4)
    assert is_spanning_tree(g, [0, 1, 2])
    assert not is_spanning_tree(g, [0, 1])
    assert not is_spanning_tree(g, [0, 1, 2, 3])
