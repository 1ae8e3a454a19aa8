"""Walk one small instance through the three stages.

A 6-cycle with two chords, a laminar family of three sets, and bounds
taken from a deliberately expensive witness tree. We print the LP point,
the refined family the reduction settles on, the rounding log, and the
final certificate.
"""
from fractions import Fraction

from lamtree import Graph, Instance, LaminarFamily, LaminarSet, solve_instance
from lamtree.lp import dump_lp
from lamtree.pipeline import lp2_program

g = Graph(6, [(0, 0, 1), (1, 1, 2), (2, 2, 3), (3, 3, 4), (4, 4, 5), (5, 5, 0),
              (6, 0, 3), (7, 1, 4)])
family = LaminarFamily((
    LaminarSet(0, frozenset({0, 1, 2}), 1),
    LaminarSet(1, frozenset({0, 1}), 2),
    LaminarSet(2, frozenset({3}), 1),
))
costs = {0: 4, 1: 1, 2: 1, 3: 1, 4: 1, 5: 4, 6: Fraction(1, 2), 7: Fraction(1, 2)}
inst = Instance(g, family, costs)

print("The LP before any separation rounds:")
print(dump_lp(lp2_program(g, inst.family, inst.costs)))

rep = solve_instance(inst)

print("\nBasic optimal LP point (nonzero coordinates):")
for e, v in sorted(rep.lp_point.items()):
    if v:
        print(f"  x[{e}] = {v}")
print(f"LP cost {rep.cost_lp}")

print("\nReduction: each original set is replaced by well-connected pieces")
for step in rep.reduction.trace:
    blocks = [sorted(b) for b in step.partition.blocks]
    print(f"  set {step.set_id} {sorted(step.members)} -> {blocks}  (attack value {step.value})")

print("\nRounding log:")
for step in rep.rounding.log:
    extra = f" edge {step.edge}" if step.edge is not None else ""
    if step.rule == "drop":
        extra = f" set {step.set_id} ({step.reason}, slack {step.slack})"
    print(f"  depth {step.depth}: {step.rule}{extra}")

print(f"\nTree {rep.tree}, cost {rep.cost_tree} <= {rep.cost_factor} * {rep.cost_lp}")
for row in rep.cuts:
    ratio = "-" if row.ratio is None else f"{float(row.ratio):.3f}"
    print(f"  set {row.set_id}: crosses {row.crossings}, x(delta) = {row.x_delta}, bound {row.bound}, ratio {ratio}")
print(f"every ratio is at most {rep.thinness_factor} ~ {float(rep.thinness_factor):.3f}")
