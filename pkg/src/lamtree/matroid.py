"""Rank-oracle matroids over edge ids.

Graphic and partition matroids stay concrete under minors (contracting a
graphic matroid contracts its graph), so the flow-based separation in
``lamtree.oracles`` keeps working after any sequence of deletions,
contractions and refinements. Anything else goes through
:class:`OracleMatroid` and the generic :class:`Minor` wrapper.
"""
from __future__ import annotations

from itertools import combinations
from typing import Callable, Iterable

from .model import Graph, InputError, LaminarFamily, UnionFind, contract_sets, inside_edges, weight


class Matroid:
    kind = "abstract"

    def __init__(self, groundset: Iterable[int]):
        self.groundset = frozenset(groundset)
        self._memo: dict = {}

    def rank(self, F=None) -> int:
        F = self.groundset if F is None else frozenset(F)
        if not F <= self.groundset:
            raise InputError(f"ids {sorted(F - self.groundset)} are not in the groundset")
        r = self._memo.get(F)
        if r is None:
            r = self._memo[F] = self._rank(F)
        return r

    def _rank(self, F: frozenset) -> int:
        raise NotImplementedError

    def _check(self, F) -> frozenset:
        F = frozenset(F)
        if not F <= self.groundset:
            raise InputError(f"ids {sorted(F - self.groundset)} are not in the groundset")
        return F

    def delete(self, F) -> "Matroid":
        return Minor(self, self.groundset - self._check(F), frozenset())

    def contract(self, F) -> "Matroid":
        F = self._check(F)
        return Minor(self, self.groundset - F, F)

    def restrict(self, F) -> "Matroid":
        return self.delete(self.groundset - self._check(F))

    def parts(self) -> list:
        return [self]

    def base_equalities(self) -> list:
        """``(ids, rank)`` pairs that every basis meets with equality."""
        return [(part.groundset, part.rank()) for part in self.parts() if part.groundset]

    def is_basis(self, B) -> bool:
        B = frozenset(B)
        return len(B) == self.rank() == self.rank(B)

    def __repr__(self):
        return f"{type(self).__name__}(|E|={len(self.groundset)}, rank={self.rank()})"


class OracleMatroid(Matroid):
    """A matroid given only by a rank callback on frozensets of ids."""

    kind = "oracle"

    def __init__(self, groundset, rank_fn: Callable[[frozenset], int]):
        super().__init__(groundset)
        self._fn = rank_fn

    def _rank(self, F):
        return self._fn(F)


class Minor(Matroid):
    """``(base / contracted) | ground`` via the rank formula."""

    kind = "minor"

    def __init__(self, base: Matroid, ground: frozenset, contracted: frozenset):
        super().__init__(ground)
        self.base = base
        self.contracted = frozenset(contracted)
        self._offset = base.rank(self.contracted)

    def _rank(self, F):
        return self.base.rank(F | self.contracted) - self._offset

    def delete(self, F):
        return Minor(self.base, self.groundset - self._check(F), self.contracted)

    def contract(self, F):
        F = self._check(F)
        return Minor(self.base, self.groundset - F, self.contracted | F)


class GraphicMatroid(Matroid):
    """Cycle matroid of a multigraph; ``loops`` are rank-0 elements left by contraction."""

    kind = "graphic"

    def __init__(self, graph: Graph, loops: Iterable[int] = ()):
        self.graph = graph
        self.loops = frozenset(loops)
        super().__init__(set(graph.edge_ids) | self.loops)

    def _rank(self, F):
        uf = UnionFind(self.graph.n)
        by_id = self.graph.by_id
        r = 0
        for i in F:
            e = by_id.get(i)
            if e is not None and uf.union(e.u, e.v):
                r += 1
        return r

    def delete(self, F):
        F = self._check(F)
        return GraphicMatroid(self.graph.delete_edges(F), self.loops - F)

    def contract(self, F):
        F = self._check(F)
        g = self.graph
        blocks = [set(c) for c in g.components(F & set(g.by_id)) if len(c) > 1]
        h, mapping = contract_sets(g.delete_edges(F), blocks)
        new_loops = {e.id for e in g.edges if e.id not in F and mapping[e.u] == mapping[e.v]}
        return GraphicMatroid(h, (self.loops - F) | new_loops)


class PartitionMatroid(Matroid):
    kind = "partition"

    def __init__(self, blocks):
        self.blocks = [(frozenset(b), int(c)) for b, c in blocks]
        ground = set()
        for b, c in self.blocks:
            if ground & b:
                raise InputError("partition matroid blocks overlap")
            if c < 0:
                raise InputError("negative block capacity")
            ground |= b
        super().__init__(ground)

    def _rank(self, F):
        return sum(min(len(F & b), c) for b, c in self.blocks)

    def delete(self, F):
        F = self._check(F)
        return PartitionMatroid([(b - F, c) for b, c in self.blocks])

    def contract(self, F):
        F = self._check(F)
        return PartitionMatroid([(b - F, c - min(len(F & b), c)) for b, c in self.blocks])


class DirectSum(Matroid):
    kind = "direct-sum"

    def __init__(self, matroids, kind: str = "direct-sum"):
        flat = []
        for m in matroids:
            flat.extend(m.summands if isinstance(m, DirectSum) else [m])
        seen = set()
        for m in flat:
            if seen & m.groundset:
                raise InputError("direct sum of matroids with overlapping groundsets")
            seen |= m.groundset
        self.summands = [m for m in flat if m.groundset]
        self.kind = kind
        super().__init__(seen)

    def _rank(self, F):
        return sum(m.rank(F & m.groundset) for m in self.summands)

    def parts(self):
        return list(self.summands)

    def delete(self, F):
        F = self._check(F)
        return DirectSum([m.delete(F & m.groundset) for m in self.summands], self.kind)

    def contract(self, F):
        F = self._check(F)
        return DirectSum([m.contract(F & m.groundset) for m in self.summands], self.kind)


def direct_sum(ms) -> DirectSum:
    return DirectSum(ms)


def refine(m: Matroid, R) -> Matroid:
    """Direct sum of ``m | R`` and ``m / R``; every basis of it is a basis of ``m``."""
    R = m._check(R)
    if not R or R == m.groundset:
        raise InputError("refinement needs a nonempty proper subset of the groundset")
    return DirectSum([m.restrict(R), m.contract(R)], kind="refined")


def refine_along_family(m: Matroid, g: Graph, fam: LaminarFamily) -> Matroid:
    """Refine by ``E(S)`` for every member, smallest sets first.

    Members whose edge set is empty or the whole groundset are no-ops.
    """
    for S in fam.bottom_up():
        R = inside_edges(g, S.members) & m.groundset
        if R and R != m.groundset:
            m = refine(m, R)
    return m


def is_aligned_point(m: Matroid, g: Graph, fam: LaminarFamily, x: dict):
    """First member ``S`` with ``x(E(S)) != rank(E(S))``, else ``None``."""
    for S in fam:
        ids = inside_edges(g, S.members) & m.groundset
        if weight(x, ids) != m.rank(ids):
            return S
    return None


def check_rank_axioms(m: Matroid, triples) -> None:
    """Assert normalisation, boundedness, monotonicity and submodularity on samples."""
    assert m.rank(frozenset()) == 0
    for A, B, e in triples:
        A, B = frozenset(A), frozenset(B)
        ra, rb = m.rank(A), m.rank(B)
        assert 0 <= ra <= len(A)
        assert m.rank(A | B) + m.rank(A & B) <= ra + rb
        if A <= B:
            assert ra <= rb
        if e is not None and e not in A:
            assert ra <= m.rank(A | {e}) <= ra + 1


def bases(m: Matroid) -> list:
    """All bases by brute force (tiny groundsets only)."""
    r = m.rank()
    return [frozenset(c) for c in combinations(sorted(m.groundset), r) if m.rank(c) == r]
