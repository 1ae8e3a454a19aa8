"""Iterative relaxation for laminar-constrained bases of aligned matroids.

The recursion (delete a 0-edge / contract a 1-edge / drop a nearly
satisfied cut) is run as a loop over one persistent LP. Deleting or
contracting ``e`` pins ``x_e`` at 0 or 1, which turns the current LP into
the face that *is* the LP of the minor, so the previous vertex is still a
basic optimal solution there and no re-solve is needed; dropping a cut row
re-optimises from the current basis.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Optional

from .lp import Infeasible, LinearProgram, Row, RowGenerationLP, check_vertex
from .matroid import GraphicMatroid, Matroid, refine_along_family
from .model import Graph, LaminarFamily, cut_edges, is_spanning_tree, weight
from .oracles import PreconditionError, rank_violations, separate_forest
from .reduction import aligned_violation


class RoundingFailure(AssertionError):
    """The relaxation loop found no rule to apply (unreachable for aligned input)."""


@dataclass
class RoundingStep:
    rule: str  # "delete", "contract", "drop" or "empty"
    depth: int
    lp_value: Optional[Fraction]
    edge: Optional[int] = None
    set_id: Optional[int] = None
    reason: Optional[str] = None  # "slack<3" or "nested<2" for drops
    partner: Optional[int] = None  # the inner tight set for "nested<2"
    slack: Optional[Fraction] = None
    bounds_changed: dict = field(default_factory=dict)  # set id -> (b, b') for contractions


@dataclass
class RoundingResult:
    basis: frozenset
    log: list
    root_value: Fraction  # cost of the first basic optimum
    bounds: dict  # the bounds the basis was rounded against

    @property
    def depth(self) -> int:
        return sum(1 for s in self.log if s.rule != "empty")


def lam_constrained_basis(g: Graph, m: Matroid, fam: LaminarFamily, costs: dict,
                          verify_vertices: bool = False) -> RoundingResult:
    """Basis ``B`` of the aligned matroid ``m`` with ``c(B) <= LP`` and ``|B ∩ δ(S)| <= 2 b_S + 1``.

    Sets with ``bound=None`` are ignored. Raises :class:`lp.Infeasible` if
    the root LP is infeasible and :class:`RoundingFailure` if no rule applies.
    """
    E = set(m.groundset)
    active = {s.id: s for s in fam if s.bound is not None}
    b = {sid: s.bound for sid, s in active.items()}
    delta = {sid: cut_edges(g, s.members) & E for sid, s in active.items()}
    order = sorted(active, key=lambda sid: (len(active[sid].members), min(active[sid].members), sid))

    state = {"m": m}

    def oracle(x):
        cur = state["m"]
        sub = {i: x[i] for i in cur.groundset}
        return [Row({i: 1 for i in C}, "<=", r, kind="rank", tag=C) for C, r in rank_violations(cur, sub)]

    rows = [Row({i: 1 for i in ids}, "==", r, kind="rank", tag="base") for ids, r in m.base_equalities()]
    cut_row = {}
    for sid in order:
        if delta[sid]:
            cut_row[sid] = Row({i: 1 for i in delta[sid]}, "<=", b[sid], kind="cut", tag=sid)
            rows.append(cut_row[sid])
    variables = sorted(E)
    lp = LinearProgram(variables, {i: costs.get(i, 0) for i in variables}, rows,
                       {i: Fraction(1) for i in variables}, [oracle])
    solver = RowGenerationLP(lp)

    chosen = []
    log = []
    x = None
    root_value = None
    last_value = None
    stale = True
    budget = len(E) + len(active)
    depth = 0
    while True:
        if not E:
            log.append(RoundingStep("empty", depth, last_value))
            break
        if stale:
            sol = solver.solve()
            x = sol.x
            if root_value is None:
                root_value = sol.value
            if last_value is not None and sol.value > last_value:
                raise AssertionError("LP value increased after dropping a constraint")
            last_value = sol.value
            if verify_vertices:
                defect = check_vertex(_level_program(solver, E, b, delta), {i: x[i] for i in E})
                if defect:
                    raise AssertionError(f"level {depth}: not a vertex ({defect})")
            stale = False
        depth += 1
        if depth > budget:
            raise AssertionError("recursion deeper than |E| + |L|")

        zero = min((i for i in E if x[i] == 0), default=None)
        if zero is not None:
            solver.fix(zero, 0)
            state["m"] = state["m"].delete({zero})
            E.discard(zero)
            for sid in delta:
                delta[sid].discard(zero)
            log.append(RoundingStep("delete", depth, last_value, edge=zero))
            continue

        one = min((i for i in E if x[i] == 1), default=None)
        if one is not None:
            solver.fix(one, 1)
            state["m"] = state["m"].contract({one})
            E.discard(one)
            chosen.append(one)
            changed = {}
            for sid in delta:
                if one in delta[sid]:
                    delta[sid].discard(one)
                    if sid in b:
                        changed[sid] = (b[sid], b[sid] - 1)
                        b[sid] -= 1
                        # |B' ∩ δ| + 1 <= 2b' + 2 < 2b + 1
                        assert 2 * b[sid] + 2 < 2 * (b[sid] + 1) + 1
            log.append(RoundingStep("contract", depth, last_value, edge=one, bounds_changed=changed))
            continue

        tight = [sid for sid in order if sid in b and weight(x, delta[sid]) == b[sid]]
        slack = {sid: sum((1 - x[i] for i in delta[sid]), Fraction(0)) for sid in tight}
        drop = None
        for sid in tight:
            if slack[sid] < 3:
                # tightness turns this into |δ(S)| <= b_S + 2
                assert len(delta[sid]) <= b[sid] + 2
                drop = RoundingStep("drop", depth, last_value, set_id=sid, reason="slack<3",
                                    slack=slack[sid])
                break
            for other in tight:
                if other != sid and delta[other] <= delta[sid]:
                    rest = sum((1 - x[i] for i in delta[sid] - delta[other]), Fraction(0))
                    if rest < 2:
                        drop = RoundingStep("drop", depth, last_value, set_id=sid, reason="nested<2",
                                            partner=other, slack=rest)
                        break
            if drop:
                break
        if drop is None:
            raise RoundingFailure(f"no rule applies at depth {depth} with {len(E)} edges left")
        sid = drop.set_id
        del b[sid], delta[sid]
        order.remove(sid)
        log.append(drop)
        # a set that never had a row (empty cut) leaves the LP, and so x, unchanged
        if sid in cut_row:
            solver.drop_row(cut_row.pop(sid))
            stale = True

    basis = frozenset(chosen)
    if not m.is_basis(basis):
        raise AssertionError("rounding returned a non-basis")
    return RoundingResult(basis, log, root_value if root_value is not None else Fraction(0),
                          {s.id: s.bound for s in fam if s.bound is not None})


def _level_program(solver: RowGenerationLP, E: set, b: dict, delta: dict) -> LinearProgram:
    """The LP of the current recursion level over the surviving edges only."""
    fixed = solver.fixed
    rows = []
    for r in solver.rows:
        coefs = {i: c for i, c in r.coefs.items() if i in E}
        shift = sum((c * fixed[i] for i, c in r.coefs.items() if i not in E), Fraction(0))
        if coefs:
            rows.append(Row(coefs, r.sense, r.rhs - shift, kind=r.kind, tag=r.tag))
    return LinearProgram(sorted(E), {}, rows, {i: Fraction(1) for i in E})


def round_aligned(g: Graph, fam: LaminarFamily, x: dict, costs: dict,
                  verify_vertices: bool = False) -> RoundingResult:
    """Spanning tree with ``c(T) <= c(x)`` and ``|T ∩ δ(S)| <= 2⌈x(δ(S))⌉ + 1``.

    ``x`` must be a spanning-tree-polytope point aligned with ``fam``.
    """
    if weight(x, g.edge_ids) != g.n - 1 or any(x.get(i, 0) < 0 for i in g.edge_ids):
        raise PreconditionError("x is not in the spanning tree polytope")
    S = separate_forest(g, x)
    if S is not None:
        raise PreconditionError("x is not in the spanning tree polytope", S)
    bad = aligned_violation(g, fam, x)
    if bad is not None:
        raise PreconditionError(f"x is not aligned with set {bad.id}", bad)
    bounds = {s.id: ceil(weight(x, cut_edges(g, s.members))) for s in fam}
    fam_b = fam.with_bounds(bounds)
    m = refine_along_family(GraphicMatroid(g), g, fam_b)
    try:
        res = lam_constrained_basis(g, m, fam_b, costs, verify_vertices)
    except Infeasible as exc:
        raise AssertionError("aligned point infeasible for its own rounding LP") from exc
    if not is_spanning_tree(g, res.basis):
        raise AssertionError("rounding did not return a spanning tree")
    return res
