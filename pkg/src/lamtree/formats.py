"""JSON instance, point and report files. Rationals always travel as strings."""
from __future__ import annotations

import json
from fractions import Fraction

from .model import (DEFAULT_ETA, Graph, InputError, Instance, LaminarFamily, LaminarSet,
                    as_rational, format_rational)

VACUOUS = "0/0 vacuous"


def _q(v) -> str:
    return format_rational(Fraction(v))


def _int(value, what) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{what} must be an integer, got {value!r}")
    return value


def instance_from_dict(d: dict, eta=None) -> Instance:
    if not isinstance(d, dict):
        raise InputError("instance must be a JSON object")
    try:
        n = _int(d["vertices"], "vertices")
        edges = d["edges"]
        sets = d.get("laminar", [])
    except KeyError as exc:
        raise InputError(f"instance is missing {exc.args[0]!r}") from exc
    try:
        triples = [(_int(e["id"], "edge id"), _int(e["u"], "u"), _int(e["v"], "v")) for e in edges]
        costs = {e["id"]: as_rational(e.get("cost", 0)) for e in edges}
        fam = LaminarFamily(tuple(
            LaminarSet(_int(s["id"], "set id"), frozenset(_int(v, "vertex") for v in s["set"]),
                       None if s.get("bound") is None else _int(s["bound"], "bound"))
            for s in sets))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed edge or set entry: {exc}") from exc
    if eta is None:
        eta = d.get("eta", DEFAULT_ETA)
    return Instance(Graph(n, triples), fam, costs, as_rational(eta))


def instance_to_dict(inst: Instance) -> dict:
    g = inst.graph
    return {
        "vertices": g.n,
        "edges": [{"id": e.id, "u": e.u, "v": e.v, "cost": _q(inst.costs.get(e.id, 0))} for e in g.edges],
        "laminar": [{"id": s.id, "set": sorted(s.members), "bound": s.bound} for s in inst.family],
        "eta": _q(inst.eta),
    }


def point_to_dict(x: dict) -> dict:
    return {str(k): _q(v) for k, v in sorted(x.items())}


def point_from_dict(d: dict) -> dict:
    """Edge-indexed point; accepts ``{"x": {...}}`` or the bare mapping."""
    if isinstance(d, dict) and isinstance(d.get("x"), dict):
        d = d["x"]
    if not isinstance(d, dict):
        raise InputError("point must be a JSON object mapping edge ids to rationals")
    try:
        return {int(k): as_rational(v) for k, v in d.items()}
    except ValueError as exc:
        raise InputError(f"bad edge id in point: {exc}") from exc


def family_to_list(fam: LaminarFamily) -> list:
    return [{"id": s.id, "set": sorted(s.members), "bound": s.bound} for s in fam]


def reduction_trace(red) -> list:
    return [{"set": st.set_id, "members": sorted(st.members),
             "contracted": [sorted(c) for c in st.contracted],
             "partition": [sorted(b) for b in st.partition.blocks],
             "value": _q(st.value)} for st in red.trace]


def rounding_log(rnd) -> list:
    out = []
    for st in rnd.log:
        row = {"rule": st.rule, "depth": st.depth,
               "lp_value": None if st.lp_value is None else _q(st.lp_value)}
        if st.edge is not None:
            row["edge"] = st.edge
        if st.set_id is not None:
            row["set"] = st.set_id
            row["reason"] = st.reason
            row["slack"] = _q(st.slack)
        if st.partner is not None:
            row["partner"] = st.partner
        if st.bounds_changed:
            row["bounds_changed"] = {str(k): list(v) for k, v in st.bounds_changed.items()}
        out.append(row)
    return out


def report_to_dict(rep) -> dict:
    ratio = rep.cost_ratio
    return {
        "status": rep.status,
        "tree": list(rep.tree),
        "cost": {"tree": _q(rep.cost_tree), "lp": _q(rep.cost_lp),
                 "ratio": VACUOUS if ratio is None else _q(ratio)},
        "cuts": [{"set": c.set_id, "crossings": c.crossings, "x_delta": _q(c.x_delta),
                  "bound": c.bound, "ratio": None if c.ratio is None else _q(c.ratio)}
                 for c in rep.cuts],
        "guarantees": {"eta": _q(rep.eta), "cost_factor": _q(rep.cost_factor),
                       "thinness_factor": _q(rep.thinness_factor)},
        "x": point_to_dict(rep.lp_point),
        "trace": {
            "reduction": [] if rep.reduction is None else reduction_trace(rep.reduction),
            "new_family": [] if rep.reduction is None else family_to_list(rep.reduction.new_family),
            "aligned_point": {} if rep.reduction is None else point_to_dict(rep.reduction.aligned_point),
            "rounding": [] if rep.rounding is None else rounding_log(rep.rounding),
        },
    }


def infeasible_report(reason: str) -> dict:
    return {"status": "infeasible", "reason": reason}


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc})") from exc
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc


def dump_json(obj, path=None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=False) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
