"""Command line: ``lamtree <subcommand> ...`` (or ``python -m lamtree``).

Exit codes: 0 ok, 1 verification failed, 2 infeasible, 3 bad input,
4 internal invariant failure.
"""
from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from . import formats
from .harness import gen_feasible_bounds, gen_k_connected, gen_laminar, random_costs
from .lp import Infeasible, LPError
from .model import (Graph, InputError, Instance, as_rational, cut_edges, format_rational,
                    is_spanning_tree, weight)
from .oracles import PreconditionError, min_partition
from .pipeline import cost_factor, solve_instance, solve_lp2, thinness_factor
from .reduction import check_lp_point, reduce
from .rounding import round_aligned

OK, VERIFY_FAILED, INFEASIBLE, BAD_INPUT, INTERNAL = 0, 1, 2, 3, 4


def _emit(obj, out):
    text = formats.dump_json(obj, out)
    if out is None:
        sys.stdout.write(text)


def _load_instance(args, eta=None) -> Instance:
    return formats.instance_from_dict(formats.load_json(args.instance), eta=eta)


def cmd_solve(args):
    inst = _load_instance(args, eta=args.eta)
    try:
        rep = solve_instance(inst)
    except Infeasible:
        _emit(formats.infeasible_report("LP relaxation infeasible: no tree meets the bounds"), args.out)
        return INFEASIBLE
    _emit(formats.report_to_dict(rep), args.out)
    return OK


def cmd_lp(args):
    inst = _load_instance(args)
    try:
        sol = solve_lp2(inst.graph, inst.family, inst.costs)
    except Infeasible:
        _emit(formats.infeasible_report("LP relaxation infeasible"), args.out)
        return INFEASIBLE
    _emit({"status": "ok", "value": format_rational(sol.value), "rounds": sol.rounds,
           "x": formats.point_to_dict(sol.x)}, args.out)
    return OK


def cmd_reduce(args):
    inst = _load_instance(args)
    x = formats.point_from_dict(formats.load_json(args.x))
    red = reduce(inst.graph, inst.family, x, inst.eta)
    _emit({"status": "ok", "new_family": formats.family_to_list(red.new_family),
           "replacement": {str(k): v for k, v in red.replacement.items()},
           "aligned_point": formats.point_to_dict(red.aligned_point),
           "trace": formats.reduction_trace(red)}, args.out)
    return OK


def cmd_round(args):
    inst = _load_instance(args)
    x = formats.point_from_dict(formats.load_json(args.x))
    res = round_aligned(inst.graph, inst.family, x, inst.costs)
    tree = sorted(res.basis)
    g = inst.graph
    _emit({"status": "ok", "tree": tree,
           "cost": {"tree": format_rational(sum((inst.costs[i] for i in tree), Fraction(0))),
                    "x": format_rational(sum((inst.costs[i] * x.get(i, 0) for i in g.edge_ids), Fraction(0)))},
           "cuts": [{"set": s.id, "crossings": len(set(tree) & cut_edges(g, s.members)),
                     "x_delta": format_rational(weight(x, cut_edges(g, s.members))),
                     "bound": res.bounds.get(s.id)} for s in inst.family],
           "rounding": formats.rounding_log(res)}, args.out)
    return OK


def verify_report(inst: Instance, report: dict) -> list:
    """Everything wrong with ``report`` for ``inst``, recounted from scratch; empty if valid."""
    problems = []
    if report.get("status") == "infeasible":
        try:
            solve_lp2(inst.graph, inst.family, inst.costs)
            problems.append("report says infeasible but the LP has a solution")
        except Infeasible:
            pass
        return problems
    g = inst.graph
    try:
        tree = [int(i) for i in report["tree"]]
        x = formats.point_from_dict(report["x"])
        cost = report["cost"]
        guarantees = report["guarantees"]
        eta = as_rational(guarantees["eta"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed report: {exc}") from exc
    if not is_spanning_tree(g, tree):
        problems.append("tree is not a spanning tree")
    try:
        check_lp_point(g, inst.family, x)
    except PreconditionError as exc:
        problems.append(f"x is not LP-feasible: {exc}")
    c_T = sum((inst.costs[i] for i in tree), Fraction(0))
    c_x = sum((inst.costs[i] * x.get(i, 0) for i in g.edge_ids), Fraction(0))
    if as_rational(cost["tree"]) != c_T:
        problems.append(f"tree cost {cost['tree']} != recount {c_T}")
    if as_rational(cost["lp"]) != c_x:
        problems.append(f"lp cost {cost['lp']} != recount {c_x}")
    if c_T > eta * c_x:
        problems.append(f"cost guarantee broken: {c_T} > {eta} * {c_x}")
    if as_rational(guarantees["cost_factor"]) != cost_factor(eta):
        problems.append("cost factor does not match eta")
    factor = thinness_factor(eta)
    if as_rational(guarantees["thinness_factor"]) != factor:
        problems.append("thinness factor does not match eta")
    rows = {r["set"]: r for r in report.get("cuts", [])}
    T = set(tree)
    for s in inst.family:
        d = cut_edges(g, s.members)
        k, xd = len(T & d), weight(x, d)
        row = rows.get(s.id)
        if row is None:
            problems.append(f"set {s.id} missing from report")
            continue
        if row["crossings"] != k or as_rational(row["x_delta"]) != xd:
            problems.append(f"set {s.id}: report ({row['crossings']}, {row['x_delta']}) != recount ({k}, {xd})")
        if k > factor * xd:
            problems.append(f"set {s.id}: {k} crossings exceed {factor} * {xd}")
    return problems


def cmd_verify(args):
    inst = _load_instance(args)
    problems = verify_report(inst, formats.load_json(args.report))
    for p in problems:
        print(f"FAIL {p}")
    if not problems:
        print("OK report verified")
    return VERIFY_FAILED if problems else OK


def cmd_gen(args):
    g = gen_k_connected(args.n, args.k, args.seed)
    rng = random.Random(args.seed)
    fam = gen_laminar(g, rng.getrandbits(64), max_depth=args.depth)
    bounds, _ = gen_feasible_bounds(g, fam, rng.getrandbits(64))
    inst = Instance(g, fam.with_bounds(bounds), random_costs(g, rng))
    _emit(formats.instance_to_dict(inst), args.out)
    return OK


def cmd_min_partition(args):
    d = formats.load_json(args.instance)
    try:
        g = Graph(d["vertices"], [(e["id"], e["u"], e["v"]) for e in d["edges"]])
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed graph: {exc}") from exc
    w = formats.point_from_dict(formats.load_json(args.weights))
    P, value = min_partition(g, w)
    print(formats.dump_json({"partition": [sorted(b) for b in P.blocks], "value": format_rational(value)}), end="")
    return OK


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; argparse's own status 2 means "infeasible" here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(BAD_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lamtree", description="Laminar-constrained spanning trees")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="LP, reduction and rounding with a certified report")
    s.add_argument("--instance", required=True)
    s.add_argument("--eta", type=str, default=None, help="rational > 2, e.g. 93/20")
    s.add_argument("--out")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("lp", help="basic optimal solution of the LP relaxation")
    s.add_argument("--instance", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_lp)

    s = sub.add_parser("reduce", help="turn an LP point into an aligned point")
    s.add_argument("--instance", required=True)
    s.add_argument("--x", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("round", help="round an aligned point to a spanning tree")
    s.add_argument("--instance", required=True)
    s.add_argument("--x", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_round)

    s = sub.add_parser("verify", help="recount a report against its instance")
    s.add_argument("--instance", required=True)
    s.add_argument("--report", required=True)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("gen", help="random k-edge-connected instance with feasible bounds")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--depth", type=int, default=2)
    s.add_argument("--out")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("min-partition", help="minimum-attack partition (debugging)")
    s.add_argument("--instance", required=True)
    s.add_argument("--weights", required=True)
    s.set_defaults(func=cmd_min_partition)
    return p


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return INFEASIBLE
    except (InputError, PreconditionError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except (AssertionError, LPError) as exc:
        print(f"internal failure: {exc}", file=sys.stderr)
        return INTERNAL


def main():
    sys.exit(run())
