import json

import pytest

from lamtree import formats
from lamtree.cli import run
from lamtree.harness import random_instance
from lamtree.lp import Infeasible
from lamtree.model import as_rational
from lamtree.pipeline import solve_instance


def _write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def test_gen_solve_verify_round_trip(tmp_path):
    inst = tmp_path / "inst.json"
    rep = tmp_path / "rep.json"
    assert run(["gen", "--n", "8", "--k", "4", "--seed", "5", "--out", str(inst)]) == 0
    assert run(["solve", "--instance", str(inst), "--out", str(rep)]) == 0
    assert run(["verify", "--instance", str(inst), "--report", str(rep)]) == 0
    data = json.loads(rep.read_text())
    assert data["status"] == "ok"
    data["cuts"][0]["crossings"] += 1
    _write(rep, data)
    assert run(["verify", "--instance", str(inst), "--report", str(rep)]) == 1


def test_corpus_round_trip(tmp_path):
    for seed in range(15):
        inst, _ = random_instance(seed)
        ipath = _write(tmp_path / f"i{seed}.json", formats.instance_to_dict(inst))
        rpath = str(tmp_path / f"r{seed}.json")
        assert run(["solve", "--instance", ipath, "--out", rpath]) == 0
        assert run(["verify", "--instance", ipath, "--report", rpath]) == 0


def test_infeasible_exit_code(tmp_path):
    inst = {"vertices": 4,
            "edges": [{"id": i, "u": i, "v": (i + 1) % 4, "cost": "1"} for i in range(4)],
            "laminar": [{"id": 0, "set": [0, 1], "bound": 0}]}
    path = _write(tmp_path / "inst.json", inst)
    out = tmp_path / "rep.json"
    assert run(["solve", "--instance", path, "--out", str(out)]) == 2
    assert json.loads(out.read_text())["status"] == "infeasible"
    assert run(["verify", "--instance", path, "--report", str(out)]) == 0


def test_bad_input_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["solve", "--instance", str(bad)]) == 3
    assert run(["solve", "--instance", str(tmp_path / "missing.json")]) == 3
    crossing = {"vertices": 3, "edges": [{"id": 0, "u": 0, "v": 1}, {"id": 1, "u": 1, "v": 2}],
                "laminar": [{"id": 0, "set": [0, 1]}, {"id": 1, "set": [1, 2]}]}
    assert run(["solve", "--instance", _write(tmp_path / "c.json", crossing)]) == 3
    floats = {"vertices": 2, "edges": [{"id": 0, "u": 0, "v": 1, "cost": 0.5}], "laminar": []}
    assert run(["solve", "--instance", _write(tmp_path / "f.json", floats)]) == 3
    with pytest.raises(SystemExit) as exc:
        run(["nonsense"])
    assert exc.value.code == 3


def test_stage_commands(tmp_path, capsys):
    inst, _ = random_instance(3)
    ipath = _write(tmp_path / "i.json", formats.instance_to_dict(inst))
    xpath = tmp_path / "x.json"
    assert run(["lp", "--instance", ipath, "--out", str(xpath)]) == 0
    red = tmp_path / "red.json"
    assert run(["reduce", "--instance", ipath, "--x", str(xpath), "--out", str(red)]) == 0
    r = json.loads(red.read_text())
    aligned = {"vertices": inst.graph.n,
               "edges": formats.instance_to_dict(inst)["edges"],
               "laminar": [dict(s, bound=None) for s in r["new_family"]]}
    apath = _write(tmp_path / "a.json", aligned)
    ppath = _write(tmp_path / "p.json", r["aligned_point"])
    assert run(["round", "--instance", apath, "--x", ppath]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["status"] == "ok" and len(out["tree"]) == inst.graph.n - 1
    wpath = _write(tmp_path / "w.json", {"0": "1/4", "1": "1/4", "2": "1/4", "3": "1/4"})
    cyc = {"vertices": 4, "edges": [{"id": i, "u": i, "v": (i + 1) % 4} for i in range(4)]}
    assert run(["min-partition", "--instance", _write(tmp_path / "c.json", cyc), "--weights", wpath]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == "-2"


def test_round_rejects_unaligned_point(tmp_path):
    cyc = {"vertices": 4, "edges": [{"id": i, "u": i, "v": (i + 1) % 4} for i in range(4)],
           "laminar": [{"id": 0, "set": [0, 1], "bound": None}]}
    x = {str(i): "3/4" for i in range(4)}
    assert run(["round", "--instance", _write(tmp_path / "i.json", cyc),
                "--x", _write(tmp_path / "x.json", x)]) == 3


def test_serialisation_is_lossless():
    for seed in range(10):
        inst, _ = random_instance(seed, mode="mixed")
        d = formats.instance_to_dict(inst)
        again = formats.instance_from_dict(json.loads(json.dumps(d)))
        assert formats.instance_to_dict(again) == d
        assert again.costs == inst.costs and again.eta == inst.eta
        try:
            rep = solve_instance(inst)
        except Infeasible:
            continue
        d = json.loads(json.dumps(formats.report_to_dict(rep)))
        assert as_rational(d["cost"]["tree"]) == rep.cost_tree
        assert as_rational(d["cost"]["lp"]) == rep.cost_lp
        assert formats.point_from_dict(d["x"]) == rep.lp_point
        assert [as_rational(c["x_delta"]) for c in d["cuts"]] == [c.x_delta for c in rep.cuts]
        assert json.loads(json.dumps(d)) == d
