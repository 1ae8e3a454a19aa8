import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import F, cycle, fam
from lamtree.harness import brute_best_tree, enumerate_spanning_trees, random_instance
from lamtree.lp import (Infeasible, LinearProgram, Row, RowGenerationLP, Unbounded, check_vertex,
                        dump_lp, solve_basic)
from lamtree.pipeline import lp2_program, solve_lp2


def test_tiny_lp():
    lp = LinearProgram(["a", "b"], {"a": 1}, [Row({"a": 1, "b": 1}, "==", 1)], {"a": 1, "b": 1})
    sol = solve_basic(lp)
    assert sol.x == {"a": 0, "b": 1} and sol.value == 0
    assert check_vertex(sol.program, sol.x) is None


def test_infeasible_and_unbounded():
    lp = LinearProgram(["a"], {"a": 1}, [Row({"a": 1}, ">=", 2)], {"a": 1})
    with pytest.raises(Infeasible):
        solve_basic(lp)
    lp = LinearProgram(["a"], {"a": -1}, [], {"a": None})
    with pytest.raises(Unbounded):
        solve_basic(lp)


@given(st.integers(0, 10**6))
def test_small_lps_against_vertex_enumeration(seed):
    # independent oracle: every vertex of a 3-variable box LP, by solving 3x3 systems
    from itertools import combinations

    rng = random.Random(seed)
    names = [0, 1, 2]
    rows = []
    for _ in range(rng.randint(1, 4)):
        coefs = {j: rng.randint(-3, 3) for j in names}
        rows.append(Row(coefs, rng.choice(["<=", ">=", "=="]), rng.randint(-2, 4)))
    obj = {j: rng.randint(-5, 5) for j in names}
    lp = LinearProgram(names, obj, rows, {j: 2 for j in names})
    planes = [(r.coefs, r.rhs) for r in rows if r.coefs]
    planes += [({j: 1}, 0) for j in names] + [({j: 1}, 2) for j in names]
    best = None
    for trio in combinations(planes, 3):
        A = [[Fraction(c.get(j, 0)) for j in names] + [Fraction(b)] for c, b in trio]
        x = _solve3(A)
        if x is None:
            continue
        pt = dict(zip(names, x))
        if all(0 <= v <= 2 for v in x) and all(r.violation(pt) == 0 for r in rows):
            val = sum(obj[j] * pt[j] for j in names)
            best = val if best is None else min(best, val)
    try:
        sol = solve_basic(lp)
    except Infeasible:
        assert best is None
        return
    assert sol.value == best
    assert check_vertex(sol.program, sol.x) is None


def _solve3(A):
    A = [row[:] for row in A]
    n = 3
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return None
        A[c], A[p] = A[p], A[c]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c] / A[c][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return [A[i][n] / A[i][i] for i in range(n)]


def test_lp2_four_cycle_unit_costs():
    g = cycle(4)
    sol = solve_lp2(g, fam(range(4)), {i: 1 for i in range(4)})
    assert sol.value == 3
    assert check_vertex(sol.program, sol.x) is None


def test_lp2_infeasible_zero_bound():
    g = cycle(4)
    with pytest.raises(Infeasible):
        solve_lp2(g, fam({0, 1}, range(4), bounds={0: 0}), {i: 1 for i in range(4)})


def test_lp2_vacuous_bounds_give_mst_value():
    for seed in range(25):
        inst, _ = random_instance(seed)
        g = inst.graph
        loose = inst.family.with_bounds({s.id: None for s in inst.family})
        mst = min(sum(inst.costs[i] for i in T) for T in enumerate_spanning_trees(g))
        assert solve_lp2(g, loose, inst.costs).value == mst


def test_lp2_at_most_witness_cost():
    for seed in range(40):
        inst, T = random_instance(seed)
        sol = solve_lp2(inst.graph, inst.family, inst.costs)
        assert sol.value <= sum(inst.costs[i] for i in T)
        assert check_vertex(sol.program, sol.x) is None


def test_check_vertex_rejects_midpoint():
    g = cycle(4)
    lp = lp2_program(g, fam(range(4)), {})
    tree = {0: F(1), 1: F(1), 2: F(1), 3: F(0)}
    assert check_vertex(lp, tree) is None
    mid = {0: F(1), 1: F(1), 2: F(1, 2), 3: F(1, 2)}
    lp.rows.append(Row({i: 1 for i in range(4)}, "<=", 3, kind="rank"))
    assert check_vertex(lp, mid) is not None


def test_warm_start_operations():
    # min -x0 - x1 with x0 + x1 <= 3/2, then drop the row, then fix
    lp = LinearProgram([0, 1], {0: -1, 1: -2}, [Row({0: 1, 1: 1}, "<=", F(3, 2), tag="cap")],
                       {0: 1, 1: 1})
    s = RowGenerationLP(lp)
    sol = s.solve()
    assert sol.x == {0: F(1, 2), 1: F(1)}
    s.fix(1, 1)
    s.drop_row(s.rows[0])
    sol = s.solve()
    assert sol.x == {0: 1, 1: 1} and sol.value == -3
    s.add_row(Row({0: 1}, "<=", F(1, 3)))
    assert s.solve().x[0] == F(1, 3)


def test_brute_tree_bounds_lp():
    for seed in range(30):
        inst, _ = random_instance(seed, mode="mixed")
        best = brute_best_tree(inst.graph, inst.family, inst.costs)
        try:
            sol = solve_lp2(inst.graph, inst.family, inst.costs)
        except Infeasible:
            assert best is None
            continue
        if best is not None:
            assert sol.value <= best[1]


def test_dump_lp_lists_rows():
    text = dump_lp(lp2_program(cycle(4), fam({0, 1}, bounds={0: 1}), {0: 1}))
    assert "x(" not in text and "<= 1" in text and "separation oracle" in text
