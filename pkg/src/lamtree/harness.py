"""Brute-force oracles and seeded instance generators for desk-scale checking."""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Optional

from .flow import min_edge_cut
from .model import (Graph, Instance, LaminarFamily, LaminarSet, Partition, UnionFind,
                    cut_edges, delta_partition, inside_edges, weight)

TREE_CAP = 10**6


# --------------------------------------------------------------- counting

def _bareiss_det(M) -> int:
    M = [list(r) for r in M]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def count_spanning_trees(g: Graph) -> int:
    """Kirchhoff: any cofactor of the Laplacian (exact integer determinant)."""
    if g.n == 1:
        return 1
    L = [[0] * g.n for _ in range(g.n)]
    for e in g.edges:
        L[e.u][e.u] += 1
        L[e.v][e.v] += 1
        L[e.u][e.v] -= 1
        L[e.v][e.u] -= 1
    return _bareiss_det([row[1:] for row in L[1:]])


def enumerate_spanning_trees(g: Graph, cap: int = TREE_CAP) -> Iterator[frozenset]:
    """Every spanning tree exactly once, as a frozenset of edge ids."""
    count = count_spanning_trees(g)
    if count > cap:
        raise ValueError(f"{count} spanning trees exceed the cap {cap}; use a smaller instance")
    if count == 0:
        return
    edges = sorted(g.edges, key=lambda e: e.id)
    m = len(edges)

    def connected_with(avail_from, chosen_uf_parent):
        uf = UnionFind(g.n)
        uf.parent = list(chosen_uf_parent)
        for e in edges[avail_from:]:
            uf.union(e.u, e.v)
        root = uf.find(0)
        return all(uf.find(v) == root for v in range(g.n))

    def rec(k, parent, chosen):
        if len(chosen) == g.n - 1:
            yield frozenset(chosen)
            return
        if k == m or not connected_with(k, parent):
            return
        e = edges[k]
        uf = UnionFind(g.n)
        uf.parent = list(parent)
        if uf.union(e.u, e.v):
            chosen.append(e.id)
            yield from rec(k + 1, uf.parent, chosen)
            chosen.pop()
        yield from rec(k + 1, parent, chosen)

    yield from rec(0, list(range(g.n)), [])


def brute_best_tree(g: Graph, fam: LaminarFamily, costs: dict, cap: int = TREE_CAP):
    """Cheapest tree meeting every bound, ``(tree, cost)``, or ``None``."""
    cuts = [(cut_edges(g, s.members), s.bound) for s in fam if s.bound is not None]
    best = None
    for T in enumerate_spanning_trees(g, cap):
        if all(len(T & d) <= b for d, b in cuts):
            c = sum((costs.get(i, 0) for i in T), Fraction(0))
            key = (c, sorted(T))
            if best is None or key < best[0]:
                best = (key, T)
    return None if best is None else (best[1], best[0][0])


# -------------------------------------------------------------- partitions

def set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in set_partitions(rest):
        yield [[first]] + p
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]


def brute_min_partition(g: Graph, w: dict) -> tuple:
    """Exhaustive minimum of ``w(delta(P)) - (|P| - 1)``; ties go to fewer blocks, then lexicographic."""
    if g.n > 10:
        raise ValueError("brute-force partition enumeration limited to 10 vertices")
    best = None
    for blocks in set_partitions(range(g.n)):
        P = Partition(blocks)
        val = weight(w, delta_partition(g, P)) - (len(P) - 1)
        key = (val, len(P), [sorted(b) for b in P.blocks])
        if best is None or key < best[0]:
            best = (key, P)
    return best[1], best[0][0]


def brute_forest_separation(g: Graph, x: dict) -> Optional[tuple]:
    """``(S, x(E(S)) - |S| + 1)`` for a most violated vertex set, or ``None``."""
    if g.n > 12:
        raise ValueError("subset enumeration limited to 12 vertices")
    best = None
    for k in range(1, g.n + 1):
        for S in combinations(range(g.n), k):
            viol = weight(x, inside_edges(g, S)) - (k - 1)
            if viol > 0 and (best is None or viol > best[1]):
                best = (frozenset(S), viol)
    return best


# -------------------------------------------------------------- generators

def random_tree_edges(n: int, rng: random.Random) -> list:
    order = list(range(n))
    rng.shuffle(order)
    return [(order[i], order[rng.randrange(i)]) for i in range(1, n)]


def gen_graph(n: int, extra: int, seed, parallel: bool = True) -> Graph:
    """Random spanning tree plus ``extra`` random edges (parallel edges allowed)."""
    rng = random.Random(seed)
    pairs = random_tree_edges(n, rng)
    present = {frozenset(p) for p in pairs}
    tries = 0
    while len(pairs) < n - 1 + extra and tries < 1000:
        tries += 1
        u, v = rng.sample(range(n), 2)
        if not parallel and frozenset((u, v)) in present:
            continue
        present.add(frozenset((u, v)))
        pairs.append((u, v))
    return Graph(n, [(i, u, v) for i, (u, v) in enumerate(pairs)])


def gen_k_connected(n: int, k: int, seed, retries: int = 50) -> Graph:
    """Union of ``ceil(k/2)`` shuffled Hamiltonian cycles, verified ``k``-edge-connected."""
    if n < 3 or k < 1:
        raise ValueError("need n >= 3 and k >= 1")
    rng = random.Random(seed)
    for _ in range(retries):
        pairs = []
        for _ in range((k + 1) // 2):
            order = list(range(n))
            rng.shuffle(order)
            pairs += [(order[i], order[(i + 1) % n]) for i in range(n)]
        g = Graph(n, [(i, u, v) for i, (u, v) in enumerate(pairs)])
        if min_edge_cut(g)[0] >= k:
            return g
    raise ValueError(f"no {k}-edge-connected graph found in {retries} attempts")


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, u, v) for i, (u, v) in enumerate(combinations(range(n), 2))])


def gen_laminar(g, seed, max_depth: int = 3, max_sets: int = 12) -> LaminarFamily:
    """``V`` plus blocks of a random recursive partition (nesting by construction).

    ``g`` may be a graph or a vertex count.
    """
    n = g.n if isinstance(g, Graph) else int(g)
    rng = random.Random(seed)
    sets = [frozenset(range(n))]
    frontier = [frozenset(range(n))]
    for _ in range(max_depth):
        nxt = []
        for S in frontier:
            if len(S) < 2:
                continue
            members = sorted(S)
            rng.shuffle(members)
            parts = rng.randint(2, min(3, len(members)))
            cuts = sorted(rng.sample(range(1, len(members)), parts - 1))
            for a, b in zip([0] + cuts, cuts + [len(members)]):
                block = frozenset(members[a:b])
                if rng.random() < 0.75 and len(sets) < max_sets:
                    sets.append(block)
                nxt.append(block)
        frontier = nxt
    return LaminarFamily(tuple(LaminarSet(i, s) for i, s in enumerate(sets)))


def random_spanning_tree(g: Graph, rng: random.Random) -> frozenset:
    edges = list(g.edges)
    rng.shuffle(edges)
    uf = UnionFind(g.n)
    return frozenset(e.id for e in edges if uf.union(e.u, e.v))


def gen_feasible_bounds(g: Graph, fam: LaminarFamily, seed) -> tuple:
    """Bounds ``b_S = |T* ∩ δ(S)|`` for a random spanning tree ``T*``; returns ``(bounds, T*)``."""
    rng = random.Random(seed)
    T = random_spanning_tree(g, rng)
    return {s.id: len(T & cut_edges(g, s.members)) for s in fam}, T


def random_costs(g: Graph, rng: random.Random, positive: bool = True) -> dict:
    lo = 1 if positive else 0
    return {i: Fraction(rng.randint(lo, 20), rng.randint(1, 6)) for i in g.edge_ids}


def random_instance(seed, n_range=(4, 10), eta=Fraction(93, 20), mode: str = "witness") -> tuple:
    """A random instance and, when one is known, a witness tree meeting its bounds.

    ``mode="witness"``: bounds are the crossings of a random tree, so the
    instance is feasible. ``mode="mixed"``: each bound is the smaller of the
    crossings of two random trees, which often leaves only fractional LP
    solutions (or none); the witness is then ``None``.
    """
    if mode not in ("witness", "mixed"):
        raise ValueError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    n = rng.randint(*n_range)
    extra = rng.randint(1, n)
    g = gen_graph(n, extra, rng.getrandbits(64))
    fam = gen_laminar(g, rng.getrandbits(64), max_depth=rng.randint(1, 3))
    bounds, T = gen_feasible_bounds(g, fam, rng.getrandbits(64))
    costs = random_costs(g, rng)
    # make the witness expensive so the bounds actually bind
    for i in T:
        costs[i] += 3
    if mode == "mixed":
        other, _ = gen_feasible_bounds(g, fam, rng.getrandbits(64))
        bounds = {sid: min(b, other[sid]) for sid, b in bounds.items()}
        T = None
    return Instance(g, fam.with_bounds(bounds), costs, eta), T


def read_manifest(path) -> list:
    """Seeds, one per line; ``#`` starts a comment."""
    seeds = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                seeds.append(int(line))
    return seeds


def tree_mixture(g: Graph, k: int, rng: random.Random) -> dict:
    """Average of ``k`` random spanning trees (a point of the spanning tree polytope)."""
    x = {i: Fraction(0) for i in g.edge_ids}
    for _ in range(k):
        for i in random_spanning_tree(g, rng):
            x[i] += Fraction(1, k)
    return x


def mixture_case(seed, n_range=(4, 10)) -> tuple:
    """``(graph, family with bounds ceil(x(delta(S))), x, costs)`` for a random tree mixture."""
    from math import ceil

    rng = random.Random(seed)
    n = rng.randint(*n_range)
    g = gen_graph(n, rng.randint(1, 2 * n), rng.getrandbits(64))
    fam = gen_laminar(g, rng.getrandbits(64), max_depth=rng.randint(1, 3))
    x = tree_mixture(g, rng.randint(2, 5), rng)
    fam = fam.with_bounds({s.id: ceil(weight(x, cut_edges(g, s.members))) for s in fam})
    return g, fam, x, random_costs(g, rng)
