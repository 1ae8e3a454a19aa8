"""Graphs with stable edge ids, laminar families and problem instances.

Every edge carries an integer id that survives deletion, induced subgraphs
and contraction, so a fractional point (a plain ``dict`` from edge id to
``Fraction``) can be restricted to any minor by filtering ids.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Optional


class InputError(ValueError):
    """Malformed or inconsistent input (bad vertex, crossing sets, ...)."""


def as_rational(value) -> Fraction:
    """Parse ``"p/q"``, ``"7"``, ints or Fractions into an exact Fraction.

    Floats are rejected on purpose: nothing in this package rounds.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise InputError(f"refusing inexact rational {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational {value!r}") from exc
    raise InputError(f"bad rational {value!r}")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Edge(NamedTuple):
    id: int
    u: int
    v: int


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected multigraph on vertices ``0..n-1``.

    ``origin[i]`` is the vertex of the parent graph that vertex ``i`` came
    from (for induced subgraphs) and is ``None`` for a root graph.
    """

    n: int
    edges: tuple = ()
    origin: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        edges = tuple(Edge(*e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        seen = set()
        for e in edges:
            if e.id in seen:
                raise InputError(f"duplicate edge id {e.id}")
            seen.add(e.id)
            if not (0 <= e.u < self.n and 0 <= e.v < self.n):
                raise InputError(f"edge {e.id} has an endpoint outside 0..{self.n - 1}")
            if e.u == e.v:
                raise InputError(f"edge {e.id} is a self-loop")

    @cached_property
    def by_id(self) -> dict:
        return {e.id: e for e in self.edges}

    @property
    def edge_ids(self) -> list:
        return [e.id for e in self.edges]

    @property
    def vertices(self) -> range:
        return range(self.n)

    def edge(self, eid: int) -> Edge:
        return self.by_id[eid]

    def delete_edges(self, ids: Iterable[int]) -> "Graph":
        drop = set(ids)
        return Graph(self.n, [e for e in self.edges if e.id not in drop], self.origin)

    def restrict_edges(self, ids: Iterable[int]) -> "Graph":
        keep = set(ids)
        return Graph(self.n, [e for e in self.edges if e.id in keep], self.origin)

    def components(self, ids: Optional[Iterable[int]] = None) -> list:
        """Connected components of ``(V, ids)`` (all edges by default)."""
        uf = UnionFind(self.n)
        for e in self.edges if ids is None else (self.by_id[i] for i in ids):
            uf.union(e.u, e.v)
        groups: dict = {}
        for v in range(self.n):
            groups.setdefault(uf.find(v), []).append(v)
        return sorted(groups.values())

    def is_connected(self) -> bool:
        return self.n >= 1 and len(self.components()) == 1

    def __repr__(self):
        return f"Graph(n={self.n}, m={len(self.edges)})"


class UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        parent = self.parent
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


def is_spanning_tree(g: Graph, ids: Iterable[int]) -> bool:
    ids = list(ids)
    if len(ids) != g.n - 1 or len(set(ids)) != len(ids):
        return False
    uf = UnionFind(g.n)
    return all(uf.union(g.by_id[i].u, g.by_id[i].v) for i in ids)


# ---------------------------------------------------------------- families

@dataclass(frozen=True)
class LaminarSet:
    id: int
    members: frozenset
    bound: Optional[int] = None


@dataclass(frozen=True, eq=False)
class LaminarFamily:
    """Nested-or-disjoint vertex sets with optional integer crossing bounds.

    Construction rejects duplicate sets, empty sets and crossing pairs.
    """

    sets: tuple = ()

    def __post_init__(self):
        sets = []
        for s in self.sets:
            if not isinstance(s, LaminarSet):
                s = LaminarSet(*s)
            s = LaminarSet(s.id, frozenset(s.members), s.bound)
            if not s.members:
                raise InputError(f"laminar set {s.id} is empty")
            if s.bound is not None and (not isinstance(s.bound, int) or s.bound < 0):
                raise InputError(f"bound of set {s.id} must be a nonnegative integer")
            sets.append(s)
        object.__setattr__(self, "sets", tuple(sets))
        ids = [s.id for s in sets]
        if len(set(ids)) != len(ids):
            raise InputError("duplicate laminar set ids")
        if len({s.members for s in sets}) != len(sets):
            raise InputError("duplicate vertex sets in laminar family")
        bad = validate_laminar(self)
        if bad is not None:
            raise InputError(f"sets {sorted(bad[0])} and {sorted(bad[1])} cross")

    def __iter__(self):
        return iter(self.sets)

    def __len__(self):
        return len(self.sets)

    @cached_property
    def by_id(self) -> dict:
        return {s.id: s for s in self.sets}

    def get(self, sid) -> LaminarSet:
        return self.by_id[sid]

    def bounds(self) -> dict:
        return {s.id: s.bound for s in self.sets}

    def with_bounds(self, bounds: dict) -> "LaminarFamily":
        return LaminarFamily(tuple(LaminarSet(s.id, s.members, bounds.get(s.id, s.bound))
                                   for s in self.sets))

    def without(self, sid) -> "LaminarFamily":
        return LaminarFamily(tuple(s for s in self.sets if s.id != sid))

    def with_root(self, n: int) -> "LaminarFamily":
        """Add ``V = {0..n-1}`` with no bound unless it is already present."""
        full = frozenset(range(n))
        if any(s.members == full for s in self.sets):
            return self
        nid = max((s.id for s in self.sets), default=-1) + 1
        return LaminarFamily(self.sets + (LaminarSet(nid, full, None),))

    def bottom_up(self) -> list:
        """Sets ordered by size, then smallest member (children before parents)."""
        return sorted(self.sets, key=lambda s: (len(s.members), min(s.members), s.id))

    def maximal_inside(self, S: frozenset) -> list:
        """Maximal members that are proper subsets of ``S``."""
        inner = [T for T in self.sets if T.members < S]
        return [T for T in inner if not any(T.members < U.members for U in inner)]

    def maximal(self) -> list:
        return [T for T in self.sets if not any(T.members < U.members for U in self.sets)]


def validate_laminar(family) -> Optional[tuple]:
    """Return the first crossing pair ``(S, T)`` of vertex sets, or ``None``."""
    sets = [s.members if isinstance(s, LaminarSet) else frozenset(s) for s in family]
    for i, S in enumerate(sets):
        for T in sets[i + 1:]:
            inter = S & T
            if inter and inter != S and inter != T:
                return S, T
    return None


@dataclass(frozen=True)
class Partition:
    """Disjoint nonempty blocks covering a ground set."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(sorted((frozenset(b) for b in self.blocks), key=lambda b: sorted(b)))
        object.__setattr__(self, "blocks", blocks)
        seen = set()
        for b in blocks:
            if not b:
                raise InputError("empty block in partition")
            if seen & b:
                raise InputError("overlapping blocks in partition")
            seen |= b

    @property
    def ground(self) -> frozenset:
        return frozenset().union(*self.blocks)

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def block_of(self) -> dict:
        return {v: i for i, b in enumerate(self.blocks) for v in b}


# ---------------------------------------------------------------- graph ops

def _check_vertices(g: Graph, S) -> frozenset:
    S = frozenset(S)
    bad = [v for v in S if not (isinstance(v, int) and 0 <= v < g.n)]
    if bad:
        raise InputError(f"unknown vertices {sorted(bad)}")
    return S


def cut_edges(g: Graph, S) -> set:
    """Ids of edges with exactly one endpoint in ``S``."""
    S = _check_vertices(g, S)
    return {e.id for e in g.edges if (e.u in S) != (e.v in S)}


def inside_edges(g: Graph, S) -> set:
    """Ids of edges with both endpoints in ``S``."""
    S = frozenset(S)
    return {e.id for e in g.edges if e.u in S and e.v in S}


def delta_partition(g: Graph, P) -> set:
    """Edges joining two different blocks; edges leaving the ground set are ignored."""
    where = P.block_of() if isinstance(P, Partition) else Partition(P).block_of()
    out = set()
    for e in g.edges:
        bu, bv = where.get(e.u), where.get(e.v)
        if bu is not None and bv is not None and bu != bv:
            out.add(e.id)
    return out


def induced(g: Graph, S) -> Graph:
    """``G[S]`` relabelled to ``0..|S|-1`` in sorted order; ``origin`` maps back."""
    S = sorted(_check_vertices(g, S))
    if not S:
        raise InputError("induced subgraph of an empty set")
    index = {v: i for i, v in enumerate(S)}
    edges = [(e.id, index[e.u], index[e.v]) for e in g.edges if e.u in index and e.v in index]
    return Graph(len(S), edges, tuple(S))


def contract_sets(g: Graph, blocks) -> tuple:
    """Shrink each block to one vertex.

    Returns ``(graph, mapping)`` where ``mapping[old] = new``. New vertices
    are numbered by the smallest old vertex they contain; edges inside a
    block disappear and all other edges keep their ids.
    """
    blocks = [frozenset(b) for b in blocks if b]
    seen = set()
    for b in blocks:
        _check_vertices(g, b)
        if seen & b:
            raise InputError("contracted blocks overlap")
        seen |= b
    blocks.sort(key=min)
    groups = blocks + [frozenset([v]) for v in range(g.n) if v not in seen]
    groups.sort(key=min)
    mapping = {v: i for i, grp in enumerate(groups) for v in grp}
    edges = []
    for e in g.edges:
        a, b = mapping[e.u], mapping[e.v]
        if a != b:
            edges.append((e.id, a, b))
    return Graph(len(groups), edges), mapping


def piece_graph(g: Graph, S, children) -> tuple:
    """``G_S``: restrict to ``S`` and contract the given disjoint child sets.

    Returns ``(graph, block_of)`` with ``block_of[i]`` the frozenset of
    original vertices merged into vertex ``i``.
    """
    H = induced(g, S)
    local = {v: i for i, v in enumerate(H.origin)}
    Hc, mapping = contract_sets(H, [frozenset(local[v] for v in c) for c in children])
    merged: dict = {}
    for old, new in mapping.items():
        merged.setdefault(new, set()).add(H.origin[old])
    return Hc, [frozenset(merged[i]) for i in range(Hc.n)]


def weight(x: dict, ids) -> Fraction:
    return sum((x.get(i, 0) for i in ids), Fraction(0))


# ---------------------------------------------------------------- instance

DEFAULT_ETA = Fraction(93, 20)


@dataclass(frozen=True, eq=False)
class Instance:
    graph: Graph
    family: LaminarFamily
    costs: dict
    eta: Fraction = DEFAULT_ETA

    def __post_init__(self):
        g = self.graph
        if not g.is_connected():
            raise InputError("graph must be connected")
        costs = {eid: as_rational(self.costs.get(eid, 0)) for eid in g.edge_ids}
        if any(c < 0 for c in costs.values()):
            raise InputError("edge costs must be nonnegative")
        object.__setattr__(self, "costs", costs)
        eta = as_rational(self.eta)
        if eta <= 2:
            raise InputError("eta must exceed 2")
        object.__setattr__(self, "eta", eta)
        for s in self.family:
            _check_vertices(g, s.members)
        object.__setattr__(self, "family", self.family.with_root(g.n))

    def bounds(self) -> dict:
        """Bounds with absent entries replaced by the vacuous ``|delta(S)|``."""
        g = self.graph
        return {s.id: (s.bound if s.bound is not None else len(cut_edges(g, s.members)))
                for s in self.family}
