"""A set whose two halves barely touch.

Two triangles joined by three edges of weight 1/15 each. Scaled by
eta = 93/20 the link weighs 31/100 < 1, so the set cannot be spanned by
a tree dominated by eta * x, and the reduction splits it into its halves.
"""
from fractions import Fraction as F

from lamtree import Graph, LaminarFamily, LaminarSet
from lamtree.oracles import is_well_connected, min_partition
from lamtree.reduction import check_summed_cut_bound, summed_cut_bound, reduce
from lamtree.model import cut_edges, weight

g = Graph(8, [(0, 0, 1), (1, 1, 2), (2, 2, 0), (3, 3, 4), (4, 4, 5), (5, 5, 3),
              (6, 0, 3), (7, 1, 4), (8, 2, 5), (9, 6, 0), (10, 7, 3), (11, 6, 7)])
x = {i: F(2, 3) for i in range(6)}
x.update({6: F(1, 15), 7: F(1, 15), 8: F(1, 15), 9: F(1), 10: F(1), 11: F(4, 5)})
eta = F(93, 20)
S = frozenset(range(6))

print("is S well connected?", is_well_connected(g, x, S, eta))
print("are the halves?", is_well_connected(g, x, {0, 1, 2}, eta), is_well_connected(g, x, {3, 4, 5}, eta))

from lamtree.model import induced
H = induced(g, S)
P, value = min_partition(H, {e.id: eta * x[e.id] for e in H.edges})
print("minimum attack partition of G[S]:", [sorted(H.origin[v] for v in b) for b in P.blocks],
      "value", value)

fam = LaminarFamily((LaminarSet(0, S),))
res = reduce(g, fam, x, eta)
pieces = [res.new_family.get(i).members for i in res.replacement[0]]
total = sum(weight(x, cut_edges(g, p)) for p in pieces)
print("S is replaced by", [sorted(p) for p in pieces])
print(f"summed cut weight {total} vs bound {summed_cut_bound(weight(x, cut_edges(g, S)), eta)}")
print("bound check:", "ok" if check_summed_cut_bound(g, fam, res.new_family, res.replacement, x, eta) is None else "violated")
print("aligned point:", {e: str(v) for e, v in sorted(res.aligned_point.items()) if v})
