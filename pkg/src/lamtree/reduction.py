"""From an arbitrary LP point to an aligned one.

:func:`reduce_family` repeatedly takes a smallest unprocessed set ``S``,
contracts the already-processed maximal subsets inside it and replaces
``S`` by a minimum-attack partition of ``eta * x`` on the contracted graph.
Every resulting set is ``eta``-well-connected, so :func:`build_aligned_point`
can pick, inside each piece, a spanning-tree point below ``eta * x``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .model import (Graph, LaminarFamily, LaminarSet, Partition, cut_edges, inside_edges,
                    piece_graph, validate_laminar, weight)
from .oracles import PreconditionError, dominated_base_point, min_partition, separate_forest


@dataclass
class ReductionStep:
    set_id: int
    members: frozenset
    contracted: list  # frozensets of L' members shrunk to single vertices
    partition: Partition
    value: Fraction  # eta * x(delta(P')) - (|P'| - 1) on the contracted graph


@dataclass
class ReductionResult:
    new_family: LaminarFamily
    aligned_point: dict
    replacement: dict  # original set id -> list of new set ids partitioning it
    trace: list = field(default_factory=list)

    @property
    def iterations(self) -> int:
        return len(self.trace)


def check_lp_point(g: Graph, fam: LaminarFamily, x: dict) -> None:
    """Raise :class:`PreconditionError` unless ``x`` is feasible for the laminar LP."""
    if any(x.get(i, 0) < 0 for i in g.edge_ids):
        raise PreconditionError("negative coordinate")
    if weight(x, g.edge_ids) != g.n - 1:
        raise PreconditionError("x(E) != |V| - 1")
    S = separate_forest(g, x)
    if S is not None:
        raise PreconditionError("spanning tree polytope row violated", S)
    for s in fam:
        if s.bound is not None and weight(x, cut_edges(g, s.members)) > s.bound:
            raise PreconditionError(f"crossing bound of set {s.id} violated", s)


def reduce_family(g: Graph, fam: LaminarFamily, x: dict, eta, check: bool = True) -> tuple:
    """Run the reduction loop; returns ``(new_family, replacement, trace)``.

    ``V`` is added to ``fam`` if missing. With ``check`` the input point is
    first verified to be LP-feasible.
    """
    eta = Fraction(eta)
    if eta <= 2:
        raise ValueError("eta must exceed 2")
    fam = fam.with_root(g.n)
    if check:
        check_lp_point(g, fam, x)
    pending = sorted(fam.sets, key=lambda s: (len(s.members), min(s.members), s.id))
    new_sets: list = []  # frozensets in creation order
    index: dict = {}
    replacement: dict = {}
    trace: list = []
    while pending:
        S = pending.pop(0)
        inner = [T for T in new_sets if T < S.members]
        children = [T for T in inner if not any(T < U for U in inner)]
        H, block_of = piece_graph(g, S.members, children)
        w = {e.id: eta * x.get(e.id, 0) for e in H.edges}
        P_local, value = min_partition(H, w)
        if value == 0:
            P_local = Partition([range(H.n)])
        P = Partition([frozenset().union(*(block_of[i] for i in b)) for b in P_local])
        ids = []
        for block in P:
            if block not in index:
                index[block] = len(new_sets)
                new_sets.append(block)
            ids.append(index[block])
        replacement[S.id] = ids
        trace.append(ReductionStep(S.id, S.members, children, P, value))
        union = [s.members for s in pending] + new_sets
        bad = validate_laminar(union)
        if bad is not None:
            raise AssertionError(f"laminarity lost: {sorted(bad[0])} crosses {sorted(bad[1])}")
    if len(trace) > 2 * g.n - 1:
        raise AssertionError(f"{len(trace)} iterations exceed 2|V| - 1")
    new_fam = LaminarFamily(tuple(LaminarSet(i, s) for i, s in enumerate(new_sets)))
    return new_fam, replacement, trace


def build_aligned_point(g: Graph, new_fam: LaminarFamily, x: dict, eta) -> dict:
    """Assemble ``x'`` from a dominated spanning-tree point of every piece ``G_S``."""
    eta = Fraction(eta)
    if frozenset(range(g.n)) not in {s.members for s in new_fam}:
        raise PreconditionError("the new family must contain V")
    xp: dict = {}
    for S in new_fam.bottom_up():
        children = [c.members for c in new_fam.maximal_inside(S.members)]
        H, _ = piece_graph(g, S.members, children)
        w = {e.id: eta * x.get(e.id, 0) for e in H.edges}
        try:
            z = dominated_base_point(H, w)
        except PreconditionError as exc:
            raise PreconditionError(f"set {S.id} is not eta-well-connected", S) from exc
        for eid, val in z.items():
            if eid in xp:
                raise AssertionError(f"edge {eid} assigned by two pieces")
            xp[eid] = val
    missing = set(g.edge_ids) - set(xp)
    if missing:
        raise AssertionError(f"edges {sorted(missing)} not covered by any piece")
    return xp


def reduce(g: Graph, fam: LaminarFamily, x: dict, eta) -> ReductionResult:
    new_fam, replacement, trace = reduce_family(g, fam, x, eta)
    xp = build_aligned_point(g, new_fam, x, eta)
    return ReductionResult(new_fam, xp, replacement, trace)


def summed_cut_bound(x_cut, eta) -> Fraction:
    """Upper bound on the summed cut weight of the pieces replacing a set."""
    eta = Fraction(eta)
    return Fraction(x_cut) / (1 - 2 / eta) - 2 / (eta - 2)


def check_summed_cut_bound(g: Graph, fam: LaminarFamily, new_fam: LaminarFamily, replacement: dict,
                           x: dict, eta):
    """``None`` if every replaced proper cut obeys the summed-weight bound, else a report.

    Sets with an empty cut (``V`` itself) carry no constraint and are skipped.
    """
    for S in fam.with_root(g.n):
        cut = cut_edges(g, S.members)
        if not cut:
            continue
        total = sum((weight(x, cut_edges(g, new_fam.get(i).members)) for i in replacement[S.id]),
                    Fraction(0))
        bound = summed_cut_bound(weight(x, cut), eta)
        if total > bound:
            return {"set": S.id, "sum": total, "bound": bound}
    return None


def check_well_connected(g: Graph, new_fam: LaminarFamily, x: dict, eta):
    """First member of ``new_fam`` that is not ``eta``-well-connected, else ``None``."""
    from .oracles import is_well_connected

    for S in new_fam:
        if not is_well_connected(g, x, S.members, eta):
            return S
    return None


def aligned_violation(g: Graph, fam: LaminarFamily, x: dict):
    """First ``S`` with ``x(E(S)) != |S| - 1`` (graph form of alignment), else ``None``."""
    for S in fam:
        if weight(x, inside_edges(g, S.members)) != len(S.members) - 1:
            return S
    return None
