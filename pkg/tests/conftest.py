import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from lamtree.model import Graph, LaminarFamily, LaminarSet

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

F = Fraction


def cycle(n):
    return Graph(n, [(i, i, (i + 1) % n) for i in range(n)])


def fam(*sets, bounds=None):
    bounds = bounds or {}
    return LaminarFamily(tuple(LaminarSet(i, frozenset(s), bounds.get(i)) for i, s in enumerate(sets)))


def two_triangles():
    """Two triangles joined by three light edges, plus two outside vertices.

    ``S = {0..5}`` is not 93/20-well-connected: its halves are joined by
    total weight 1/5 < 20/93.
    """
    edges = [(0, 0, 1), (1, 1, 2), (2, 2, 0), (3, 3, 4), (4, 4, 5), (5, 5, 3),
             (6, 0, 3), (7, 1, 4), (8, 2, 5), (9, 6, 0), (10, 7, 3), (11, 6, 7)]
    g = Graph(8, edges)
    x = {i: F(2, 3) for i in range(6)}
    x.update({6: F(1, 15), 7: F(1, 15), 8: F(1, 15), 9: F(1), 10: F(1), 11: F(4, 5)})
    return g, x


@pytest.fixture
def c4():
    return cycle(4)
