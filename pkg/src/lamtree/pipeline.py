"""End-to-end solver: LP relaxation, reduction to an aligned point, rounding.

Every report is re-derived from scratch before it is returned: the tree is
checked to be spanning, crossings are recounted from the original graph,
and both guarantees are compared exactly against the root LP point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Optional

from .flow import min_edge_cut
from .lp import LinearProgram, Row, solve_basic
from .model import (DEFAULT_ETA, Graph, Instance, InputError, LaminarFamily, cut_edges,
                    is_spanning_tree, weight)
from .oracles import dominated_base_point, forest_oracle
from .reduction import ReductionResult, reduce
from .rounding import RoundingResult, round_aligned


def cost_factor(eta) -> Fraction:
    return Fraction(eta)


def thinness_factor(eta, alpha=2, beta=3) -> Fraction:
    """``(eta * alpha + beta) / (1 - 2 / eta)``; with ``alpha=2, beta=3`` the headline factor."""
    eta = Fraction(eta)
    return (eta * alpha + beta) / (1 - 2 / eta)


@dataclass
class CutRow:
    set_id: int
    crossings: int
    x_delta: Fraction
    bound: Optional[int]
    ratio: Optional[Fraction]  # crossings / x_delta, None when the cut is empty


@dataclass
class TreeReport:
    tree: list
    cost_tree: Fraction
    cost_lp: Fraction
    cuts: list
    eta: Fraction
    cost_factor: Fraction
    thinness_factor: Fraction
    lp_point: dict = field(default_factory=dict)
    reduction: Optional[ReductionResult] = None
    rounding: Optional[RoundingResult] = None
    status: str = "ok"

    @property
    def cost_ratio(self) -> Optional[Fraction]:
        """``c(T) / c(x)``; ``None`` for the vacuous 0/0 case."""
        if self.cost_lp == 0:
            return None
        return self.cost_tree / self.cost_lp


def lp2_program(g: Graph, fam: LaminarFamily, costs: dict) -> LinearProgram:
    ids = g.edge_ids
    rows = [Row({i: 1 for i in ids}, "==", g.n - 1, kind="rank", tag="E")]
    for s in fam:
        delta = cut_edges(g, s.members)
        if s.bound is not None and delta:
            rows.append(Row({i: 1 for i in delta}, "<=", s.bound, kind="cut", tag=s.id))
    return LinearProgram(ids, {i: costs.get(i, 0) for i in ids}, rows,
                         {i: Fraction(1) for i in ids}, [forest_oracle(g)])


def solve_lp2(g: Graph, fam: LaminarFamily, costs: dict):
    """Basic optimal solution of the laminar spanning-tree LP; raises ``lp.Infeasible``."""
    if not g.is_connected():
        raise InputError("graph must be connected")
    return solve_basic(lp2_program(g, fam, costs))


def solve_from_point(g: Graph, fam: LaminarFamily, x: dict, costs: dict, eta=DEFAULT_ETA,
                     lp_value=None) -> TreeReport:
    """Reduce and round a given LP-feasible point, then certify the tree against it."""
    eta = Fraction(eta)
    fam = fam.with_root(g.n)
    red = reduce(g, fam, x, eta)
    xp = red.aligned_point
    if any(xp[i] > eta * x.get(i, 0) for i in g.edge_ids):
        raise AssertionError("aligned point not dominated by eta * x")
    rnd = round_aligned(g, red.new_family, xp, costs)
    T = sorted(rnd.basis)
    if not is_spanning_tree(g, T):
        raise AssertionError("result is not a spanning tree")
    c_x = sum((costs.get(i, 0) * x.get(i, 0) for i in g.edge_ids), Fraction(0))
    c_xp = sum((costs.get(i, 0) * xp[i] for i in g.edge_ids), Fraction(0))
    c_T = sum((costs.get(i, 0) for i in T), Fraction(0))
    if not (c_T <= rnd.root_value <= c_xp <= eta * c_x):
        raise AssertionError("cost chain c(T) <= LP <= c(x') <= eta c(x) broken")
    Tset = set(T)
    for s in red.new_family:
        d = cut_edges(g, s.members)
        k = len(Tset & d)
        if k > 2 * ceil(weight(xp, d)) + 1 or k > 2 * weight(xp, d) + 3:
            raise AssertionError(f"aligned set {s.id} crossed {k} times")
    factor = thinness_factor(eta)
    rows = []
    for s in fam:
        d = cut_edges(g, s.members)
        k = len(Tset & d)
        xd = weight(x, d)
        if k > factor * xd:
            raise AssertionError(f"set {s.id} crossed {k} > {factor} * {xd}")
        rows.append(CutRow(s.id, k, xd, s.bound, Fraction(k) / xd if xd else None))
    return TreeReport(T, c_T, c_x if lp_value is None else Fraction(lp_value), rows, eta,
                      cost_factor(eta), factor, dict(x), red, rnd)


def solve_instance(inst: Instance) -> TreeReport:
    """Full pipeline; raises ``lp.Infeasible`` when no tree can meet the bounds."""
    sol = solve_lp2(inst.graph, inst.family, inst.costs)
    return solve_from_point(inst.graph, inst.family, sol.x, inst.costs, inst.eta, sol.value)


def thin_tree_for_k_connected(g: Graph, fam: LaminarFamily, eta=DEFAULT_ETA, k=None) -> TreeReport:
    """Thin tree relative to the uniform point ``2/k`` of a k-edge-connected graph.

    ``k`` defaults to the edge connectivity; a larger ``k`` than the
    connectivity is rejected with the violating cut.
    """
    value, S = min_edge_cut(g)
    if k is None:
        k = int(value)
    if value < k:
        raise InputError(f"graph is not {k}-edge-connected: cut {sorted(S)} has {value} edges")
    x = dominated_base_point(g, {i: Fraction(2, k) for i in g.edge_ids})
    fam = fam.with_root(g.n)
    fam = fam.with_bounds({s.id: ceil(weight(x, cut_edges(g, s.members))) for s in fam})
    zero = {i: Fraction(0) for i in g.edge_ids}
    report = solve_from_point(g, fam, x, zero, eta)
    for row in report.cuts:
        d = len(cut_edges(g, fam.get(row.set_id).members))
        if row.crossings > report.thinness_factor * Fraction(2, k) * d:
            raise AssertionError(f"set {row.set_id} is not thin")
    return report
