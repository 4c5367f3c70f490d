import json
import subprocess
import sys
from pathlib import Path

import pytest

from stablerot.cli import run

INST = Path(__file__).resolve().parent.parent / "instances"


def call(capsys, *argv):
    code = run([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_xmin(capsys):
    code, out, _ = call(capsys, "xmin", INST / "inst_B.json")
    assert code == 0 and out == '[["w", "f"]]\n'
    code, out, _ = call(capsys, "xmin", "--trace", INST / "inst_A.json")
    doc = json.loads(out)
    assert doc["matching"] == [["w1", "f1"], ["w2", "f2"]]
    assert doc["rounds"][-1]["X"] == doc["rounds"][-1]["Y"] == doc["matching"]


def test_xmax(capsys):
    code, out, _ = call(capsys, "xmax", INST / "inst_A.json")
    assert json.loads(out) == [["w1", "f2"], ["w2", "f1"]]


def test_rotations(capsys, tmp_path):
    code, out, _ = call(capsys, "rotations", INST / "inst_A.json")
    assert json.loads(out) == [{"plus": [["w1", "f2"], ["w2", "f1"]], "minus": [["w1", "f1"], ["w2", "f2"]]}]
    at = tmp_path / "m.json"
    at.write_text('[["w1", "f2"], ["w2", "f1"]]')
    code, out, _ = call(capsys, "rotations", INST / "inst_A.json", "--at", at)
    assert code == 0 and json.loads(out) == []
    at.write_text('[["w1", "f1"]]')
    code, _, err = call(capsys, "rotations", INST / "inst_A.json", "--at", at)
    assert code == 1 and "not stable" in err


def test_poset_and_dot(capsys):
    code, out, _ = call(capsys, "poset", INST / "inst_F.json")
    doc = json.loads(out)
    assert [r["id"] for r in doc["rotations"]] == [0, 1] and doc["hasse"] == [[0, 1]]
    code, out, _ = call(capsys, "poset", "--dot", INST / "inst_F.json")
    assert out.startswith("digraph") and "r0 -> r1;" in out


def test_enumerate(capsys):
    code, out, _ = call(capsys, "enumerate", INST / "inst_E.json")
    assert code == 0 and len(json.loads(out)) == 4
    code, _, err = call(capsys, "enumerate", "--limit", 2, INST / "inst_E.json")
    assert code == 1 and err.startswith("error:")


def test_affine(capsys):
    code, out, _ = call(capsys, "affine", INST / "inst_A.json")
    doc = json.loads(out)
    assert doc["pivots"] == [["w1", "f1"]] and len(doc["facets"]) == 2


def test_mincost(capsys, tmp_path):
    code, out, _ = call(capsys, "mincost", INST / "inst_A.json", "--costs", INST / "costs_A.json")
    assert code == 0 and json.loads(out) == {"matching": [["w1", "f2"], ["w2", "f1"]], "cost": "-5"}
    code, _, err = call(capsys, "mincost", INST / "inst_A.json", "--costs", tmp_path / "nope.json")
    assert code == 1 and "cannot read" in err
    bad = tmp_path / "bad.json"
    bad.write_text("[{")
    assert call(capsys, "mincost", INST / "inst_A.json", "--costs", bad)[0] == 1


def test_verify(capsys):
    code, out, _ = call(capsys, "verify", INST / "inst_D.json")
    doc = json.loads(out)
    assert code == 0 and doc["passed"]
    assert set(doc["properties"]) >= {"stable_set", "xmin", "xmax", "precedence", "mincost"}
    code, _, err = call(capsys, "verify", "--oracle-cap", 2, INST / "inst_D.json")
    assert code == 1 and "cap" in err


def test_reduce_and_smodel_enumerate(capsys, tmp_path):
    out_file = tmp_path / "rep.json"
    code, out, _ = call(capsys, "reduce-sequential", INST / "smodel_G.json", "-o", out_file)
    assert code == 0 and out == ""
    code, out, _ = call(capsys, "enumerate", out_file)
    assert code == 0 and len(json.loads(out)) == 2
    code, out, _ = call(capsys, "smodel-enumerate", INST / "smodel_G.json")
    doc = json.loads(out)
    assert len(doc["stable"]) == 2
    assert doc["anomalies"] == {"delta_nonempty": [0], "repeated_workers": []}
    assert doc["rotations"][0]["delta"] == [["w1", "f3"]]


def test_axioms(capsys):
    code, out, _ = call(capsys, "axioms", INST / "inst_D.json")
    doc = json.loads(out)
    assert set(doc) == {"f", "g", "h"} and all(v["plottian"] for v in doc.values())


def test_output_flag_and_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for target in (a, b):
        assert call(capsys, "poset", INST / "inst_E.json", "-o", target)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    _, out, _ = call(capsys, "poset", INST / "inst_E.json")
    assert out.encode() == a.read_bytes()


@pytest.mark.parametrize("argv", [[], ["bogus"], ["mincost", "x.json"], ["enumerate", "--limit", "x", "y"]])
def test_usage_errors(capsys, argv):
    assert call(capsys, *argv)[0] == 2


def test_domain_errors(capsys, tmp_path):
    assert call(capsys, "xmin", tmp_path / "missing.json")[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text('{"workers": []}')
    code, _, err = call(capsys, "xmin", bad)
    assert code == 1 and err.startswith("error:")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "stablerot", "xmin", str(INST / "inst_B.json")],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == '[["w", "f"]]\n'
