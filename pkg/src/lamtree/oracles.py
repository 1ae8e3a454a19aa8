"""Separation and membership for spanning-tree and matroid base polytopes.

Everything here is exact. The workhorse is the min-cut formulation of

    max_{S ∋ r}  x(E(S)) - |S|

(and its two-terminal variant), which gives forest-row separation and, via
the polymatroid greedy algorithm, the minimum-attack partition
``argmin_P w(delta(P)) - (|P| - 1)``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Optional

from .flow import INF, FlowNetwork
from .lp import Row
from .matroid import DirectSum, GraphicMatroid, Matroid, PartitionMatroid
from .model import Graph, InputError, Partition, delta_partition, induced, weight


class PreconditionError(ValueError):
    """Input outside an operation's contract; ``witness`` says why."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


# ------------------------------------------------------------ flow kernels

def _best_set(g: Graph, x: dict, forced) -> tuple:
    """Minimise ``|S| - x(E(S))`` over vertex sets ``S`` containing ``forced``.

    Returns ``(value, S)`` with ``S`` the smallest minimiser.
    """
    n = g.n
    deg = [Fraction(0)] * n
    for e in g.edges:
        w = x.get(e.id, 0)
        if w:
            deg[e.u] += w
            deg[e.v] += w
    s, t = n, n + 1
    net = FlowNetwork(n + 2)
    const = Fraction(0)
    for v in range(n):
        a = 2 - deg[v]  # twice the per-vertex term of |S| - x(E(S))
        if a >= 0:
            net.add_arc(v, t, a)
        else:
            net.add_arc(s, v, -a)
            const += a
    for e in g.edges:
        w = x.get(e.id, 0)
        if w:
            net.add_edge(e.u, e.v, w)
    for r in forced:
        net.add_arc(s, r, INF)
    cut, side = net.min_cut(s, t)
    S = frozenset(v for v in side if v < n)
    return (cut + const) / 2, S


def forest_violations(g: Graph, x: dict) -> list:
    """Distinct vertex sets ``S`` with ``x(E(S)) > |S| - 1``, most violated first.

    One min-cut per root vertex; each reported set is the smallest most
    violated set containing its root.
    """
    found = {}
    for r in range(g.n):
        val, S = _best_set(g, x, (r,))
        viol = 1 - val
        if viol > 0 and S not in found:
            found[S] = viol
    return sorted(found.items(), key=lambda kv: (-kv[1], len(kv[0]), sorted(kv[0])))


def separate_forest(g: Graph, x: dict) -> Optional[frozenset]:
    """A vertex set maximising ``x(E(S)) - (|S| - 1)`` if that is positive."""
    if any(v < 0 for v in x.values()):
        raise InputError("separation needs a nonnegative point")
    viol = forest_violations(g, x)
    return viol[0][0] if viol else None


def saturation(g: Graph, y: dict, e) -> Fraction:
    """``min over S ⊇ {u, v} of |S| - 1 - y(E(S))`` for the edge ``e = (id, u, v)``."""
    val, _ = _best_set(g, y, (e.u, e.v))
    return val - 1


# ---------------------------------------------------------- attack problem

def partition_value(g: Graph, w: dict, P: Partition) -> Fraction:
    return weight(w, delta_partition(g, P)) - (len(P) - 1)


def greedy_forest_point(g: Graph, w: dict) -> dict:
    """Polymatroid greedy: raise ``y_e`` in id order as far as ``y <= w`` and the forest rows allow."""
    y = {}
    for e in sorted(g.edges, key=lambda e: e.id):
        cap = w.get(e.id, 0)
        if cap > 0:
            cap = min(cap, saturation(g, y, e))
        y[e.id] = max(cap, Fraction(0))
    return y


def min_partition(g: Graph, w: dict, method: str = "flow") -> tuple:
    """Partition ``P`` of ``V(g)`` minimising ``w(delta(P)) - (|P| - 1)``.

    ``method="flow"`` runs the greedy forest point and returns the components
    of its saturated edges (the coarsest minimiser; trivial partition when
    the value is 0). ``method="dp"`` is an exact subset dynamic programme
    for up to 12 vertices.
    """
    if g.n == 0:
        raise InputError("min_partition on an empty graph")
    if any(v < 0 for v in w.values()):
        raise InputError("weights must be nonnegative")
    if method == "dp":
        return _min_partition_dp(g, w)
    if method != "flow":
        raise ValueError(f"unknown method {method!r}")
    y = greedy_forest_point(g, w)
    sat = [e.id for e in g.edges if y[e.id] < w.get(e.id, 0) or saturation(g, _without(y, e.id), e) == y[e.id]]
    P = Partition(g.components(sat))
    value = partition_value(g, w, P)
    expected = sum(y.values(), Fraction(0)) - (g.n - 1)
    if value != expected:
        raise AssertionError(f"attack value {value} disagrees with greedy bound {expected}")
    return P, value


def _without(y: dict, eid) -> dict:
    out = dict(y)
    out[eid] = Fraction(0)
    return out


def _min_partition_dp(g: Graph, w: dict) -> tuple:
    n = g.n
    if n > 12:
        raise InputError("subset DP limited to 12 vertices")
    den = 1
    for v in w.values():
        den = den * Fraction(v).denominator // _gcd(den, Fraction(v).denominator)
    inner = [0] * (1 << n)  # den * w(E(mask))
    for e in g.edges:
        iw = int(Fraction(w.get(e.id, 0)) * den)
        if iw:
            bit = (1 << e.u) | (1 << e.v)
            for mask in range(1 << n):
                if mask & bit == bit:
                    inner[mask] += iw
    # maximise sum over blocks of den * (w(E(B)) + 1); ties prefer fewer blocks
    best = [None] * (1 << n)
    best[0] = (0, 0, ())
    for mask in range(1, 1 << n):
        low = mask & -mask
        rest = mask ^ low
        cand = None
        sub = rest
        while True:
            block = sub | low
            prev = best[mask ^ block]
            key = (prev[0] + inner[block] + den, -(prev[1] + 1))
            if cand is None or key > cand[0]:
                cand = (key, prev[2] + (block,))
            if sub == 0:
                break
            sub = (sub - 1) & rest
        best[mask] = (cand[0][0], -cand[0][1], cand[1])
    blocks = [frozenset(v for v in range(n) if b >> v & 1) for b in best[(1 << n) - 1][2]]
    P = Partition(blocks)
    return P, partition_value(g, w, P)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def separate_dominant(g: Graph, w: dict) -> Optional[Partition]:
    """``None`` when ``w`` dominates a spanning-tree point, else a violated partition."""
    P, value = min_partition(g, w)
    return None if value == 0 else P


def is_well_connected(g: Graph, x: dict, S, eta) -> bool:
    """Whether ``eta * x`` restricted to ``E(S)`` lies in the dominant of ``P_st(G[S])``."""
    H = induced(g, S)
    if H.n == 1:
        return True
    eta = Fraction(eta)
    return separate_dominant(H, {e.id: eta * x.get(e.id, 0) for e in H.edges}) is None


def dominated_base_point(g: Graph, y: dict) -> dict:
    """A point ``z <= y`` of the spanning-tree polytope of ``g``.

    Raises :class:`PreconditionError` carrying the violated partition when
    ``y`` is not in the dominant.
    """
    z = greedy_forest_point(g, y)
    total = sum(z.values(), Fraction(0))
    if total != g.n - 1:
        P, _ = min_partition(g, y)
        raise PreconditionError("point is not in the dominant of the spanning tree polytope", P)
    return z


# ---------------------------------------------------- base polytope of M

def _graphic_cuts(m: GraphicMatroid, x: dict) -> list:
    out = [(frozenset([i]), 0) for i in sorted(m.loops) if x.get(i, 0) > 0]
    g = m.graph
    used = sorted({v for e in g.edges if x.get(e.id, 0) > 0 for v in (e.u, e.v)})
    if not used:
        return out
    H = induced(g, used)
    for S, _ in forest_violations(H, x):
        ids = frozenset(e.id for e in H.edges if e.u in S and e.v in S)
        out.append((ids, len(S) - 1))
    return out


def _partition_cuts(m: PartitionMatroid, x: dict) -> list:
    out = []
    for block, cap in m.blocks:
        ranked = sorted(block, key=lambda i: (-x.get(i, 0), i))
        best, acc = (Fraction(0), 0), Fraction(0)
        for k, i in enumerate(ranked, 1):
            acc += x.get(i, 0)
            gain = acc - min(k, cap)
            if gain > best[0]:
                best = (gain, k)
        if best[0] > 0:
            C = frozenset(ranked[:best[1]])
            out.append((C, m.rank(C)))
    return out


def _brute_cuts(m: Matroid, x: dict) -> list:
    support = sorted(i for i in m.groundset if x.get(i, 0) > 0)
    if len(support) > 20:
        raise InputError("brute-force base polytope separation limited to 20 elements")
    best = None
    for k in range(1, len(support) + 1):
        for C in combinations(support, k):
            gain = weight(x, C) - m.rank(C)
            if gain > 0 and (best is None or gain > best[0]):
                best = (gain, frozenset(C))
    return [] if best is None else [(best[1], m.rank(best[1]))]


def rank_violations(m: Matroid, x: dict) -> list:
    """Violated rank rows ``x(C) <= rank(C)`` as ``(C, rank)`` pairs; several per call."""
    if isinstance(m, DirectSum):
        return [cut for part in m.summands for cut in rank_violations(part, x)]
    if isinstance(m, GraphicMatroid):
        return _graphic_cuts(m, x)
    if isinstance(m, PartitionMatroid):
        return _partition_cuts(m, x)
    return _brute_cuts(m, x)


def most_violated(m: Matroid, x: dict) -> tuple:
    """``(C, x(C) - rank(C))`` maximising the gain; ``C`` is empty when nothing is violated.

    Gains add over direct summands. For a graphic summand the maximiser is
    the edge set inside the blocks of a minimum-attack partition of ``x``
    (plus loops carrying weight), since ``max_C x(C) - r(C)`` equals
    ``x(E) - y(E)`` for the greedy forest point ``y <= x``.
    """
    if isinstance(m, DirectSum):
        C, gain = frozenset(), Fraction(0)
        for part in m.summands:
            c, g = most_violated(part, x)
            C, gain = C | c, gain + g
        return C, gain
    if isinstance(m, GraphicMatroid):
        loops = frozenset(i for i in m.loops if x.get(i, 0) > 0)
        g = m.graph
        C = frozenset()
        if g.edges:
            P, _ = min_partition(g, {e.id: x.get(e.id, 0) for e in g.edges})
            block = P.block_of()
            C = frozenset(e.id for e in g.edges if block[e.u] == block[e.v])
        C |= loops
        gain = weight(x, C) - m.rank(C)
        return (C, gain) if gain > 0 else (frozenset(), Fraction(0))
    if isinstance(m, PartitionMatroid):
        cuts = _partition_cuts(m, x)
    else:
        cuts = _brute_cuts(m, x)
    C = frozenset().union(*(c for c, _ in cuts)) if cuts else frozenset()
    return C, weight(x, C) - m.rank(C)


def separate_base_polytope(m: Matroid, x: dict) -> Optional[frozenset]:
    """``None`` iff ``x`` is in the base polytope of ``m``; else a violated set.

    The returned set ``C`` is a most violated rank row ``x(C) > rank(C)``;
    when only the equality ``x(E) = rank(E)`` fails it is the groundset.
    """
    if any(x.get(i, 0) < 0 for i in m.groundset):
        raise InputError("separation needs a nonnegative point")
    C, gain = most_violated(m, x)
    if gain > 0:
        return C
    if weight(x, m.groundset) != m.rank():
        return m.groundset
    return None


def base_polytope_oracle(m: Matroid):
    """Row-generation oracle for ``x in P_M`` (equalities must be added separately)."""

    def oracle(x):
        return [Row({i: 1 for i in C}, "<=", r, kind="rank", tag=C) for C, r in rank_violations(m, x)]

    return oracle


def forest_oracle(g: Graph):
    def oracle(x):
        rows = []
        for S, _ in forest_violations(g, x):
            ids = [e.id for e in g.edges if e.u in S and e.v in S]
            rows.append(Row({i: 1 for i in ids}, "<=", len(S) - 1, kind="rank", tag=S))
        return rows

    return oracle
