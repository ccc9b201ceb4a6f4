import dataclasses
import json
import subprocess
import sys

import pytest

from ncomplex.cli import fixture_path, main
from ncomplex.complexes import SeqMorphism, kernel_truncate, make_seq_morphism, make_sequence, validate_ncomplex
from ncomplex.groups import PresentedGroup
from ncomplex.intmat import IntMatrix
from ncomplex.io import dump_complex, dump_morphism, write_json

Z8 = str(fixture_path("z8_times2.json"))
Z2 = str(fixture_path("z2_zero.json"))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.lstrip().startswith("{") else out), err


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", Z8, "--n", "3")
    assert code == 0 and out["valid"]
    code, out, _ = run(capsys, "validate", Z8, "--n", "2")
    assert code == 1 and out["first_failure"] == 0
    assert out["message"].startswith("d^2 = x4 != 0 at position 0")


def test_homology(capsys):
    code, out, _ = run(capsys, "homology", Z8, "--a", "2", "--b", "1", "--all")
    assert code == 0 and out["form"] == "kapranov" and out["n"] == 3
    rows = {r["position"]: r for r in out["positions"]}
    assert all(rows[j]["group"] == "0" and rows[j]["interior"] for j in (2, 3, 4))
    code, out, _ = run(capsys, "homology", Z2, "--a", "2", "--b", "2", "--pos", "3")
    assert out["positions"][0]["invariant_factors"] == [2]


def test_homology_falls_back_to_generalized(capsys, tmp_path):
    C = make_sequence((0, 2), [PresentedGroup.free(1)] * 3, [[[1]], [[1]]])
    write_json(dump_complex(C), tmp_path / "c.json")
    code, out, _ = run(capsys, "homology", str(tmp_path / "c.json"), "--a", "1", "--b", "1", "--pos", "1")
    assert code == 0 and out["form"] == "generalized" and out["n"] is None
    code, _, _ = run(capsys, "homology", str(tmp_path / "c.json"), "--a", "1", "--b", "1", "--pos", "1", "--n", "2")
    assert code == 1


def test_total(capsys):
    code, out, _ = run(capsys, "total", Z2)
    assert code == 0 and out["total_n"] == 2 and out["certified"]
    assert all(r["invariant_factors"] == [2] for r in out["positions"])
    code, out, _ = run(capsys, "total", Z8, "--all-positions")
    assert code == 0 and out["interior_only"] is False


def test_lattice(capsys, tmp_path):
    code, out, _ = run(capsys, "lattice", Z8, "--pos", "3")
    assert code == 0 and out.startswith("digraph")
    dot = tmp_path / "l.dot"
    code, out, _ = run(capsys, "lattice", Z8, "--pos", "3", "--dot", str(dot))
    assert code == 0 and dot.read_text().startswith("digraph")
    assert out["nodes"]["ker d"]["invariant_factors"] == [2]
    assert sorted(map(sorted, out["equal"])) == [["im d", "ker d^2"], ["im d^2", "ker d"]]
    code, _, err = run(capsys, "lattice", Z8, "--pos", "0")
    assert code == 2 and "interior" in err
    assert run(capsys, "lattice", Z8, "--pos", "0", "--force")[0] == 0


def test_resolve(capsys, tmp_path):
    code, out, _ = run(capsys, "resolve", "--group", "6", "--a", "2", "--b", "1")
    assert code == 0 and out["report"]["max_nonzero_power"] == 2
    assert out["report"]["ok"] and out["report"]["lower_bound"] == {"applies": True, "power": 2, "d_power_nonzero": True}
    assert out["complex"]["differentials"] == [[[1]], [[6]]]
    code, out, _ = run(capsys, "resolve", "--group", ";2", "--a", "1", "--b", "1", "--out", str(tmp_path / "r.json"))
    assert code == 0 and out["report"]["max_nonzero_power"] == 0 and not out["report"]["group"]["invariant_factors"]
    assert json.loads((tmp_path / "r.json").read_text())["n"] == 2
    code, out, _ = run(capsys, "resolve", "--group", "2", "--a", "1", "--b", "1")
    assert out["complex"]["window"] == {"lo": -1, "hi": 0}
    assert run(capsys, "resolve", "--group", "x", "--a", "1", "--b", "1")[0] == 2


def test_qis(capsys, tmp_path, z8):
    write_json(dump_morphism(SeqMorphism.identity(z8)), tmp_path / "id.json")
    assert run(capsys, "qis", str(tmp_path / "id.json"), "--a", "2", "--b", "1")[0] == 0
    write_json(dump_morphism(kernel_truncate(z8, 3)[1]), tmp_path / "k.json")
    code, out, _ = run(capsys, "qis", str(tmp_path / "k.json"), "--a", "2", "--b", "1")
    assert code == 0 and out["quasi_isomorphism"]
    Z = PresentedGroup.free(1)
    C = validate_ncomplex(make_sequence((-1, 0), [Z, Z], [[[2]]]), 2)
    D = make_sequence((-1, 0), [PresentedGroup.zero(), PresentedGroup.cyclic(2)], [IntMatrix.zeros(1, 0)])
    write_json(dump_morphism(make_seq_morphism(C, D, {0: [[1]]})), tmp_path / "p.json")
    assert run(capsys, "qis", str(tmp_path / "p.json"), "--a", "1", "--b", "1")[0] == 0
    write_json(dump_morphism(SeqMorphism.zero(C, D)), tmp_path / "z.json")
    code, out, _ = run(capsys, "qis", str(tmp_path / "z.json"), "--a", "1", "--b", "1")
    assert code == 1 and not out["quasi_isomorphism"]
    code, out, _ = run(capsys, "qis", str(tmp_path / "z.json"), "--a", "1", "--b", "1", "--interior-only")
    assert out["positions"] == [] and code == 0


def test_check_and_replay(capsys, tmp_path):
    code, out, _ = run(capsys, "check", "--suite", "total", "--cases", "5", "--counterexample-dir", str(tmp_path))
    assert code == 0 and out["ok"] and out["cases"] == 5 and out["counterexamples"] == []
    code, out, _ = run(capsys, "check", "--suite", "factorization", "--case", "3")
    assert code == 0 and out["cases"] == 1
    assert run(capsys, "check", "--suite", "nope")[0] == 2


def test_counterexample_file(capsys, tmp_path, monkeypatch):
    import ncomplex.checks as checks

    def broken(case):
        case.check(False, "always fails")
    monkeypatch.setitem(checks.SUITES, "total", dataclasses.replace(checks.SUITES["total"], run=broken))
    code, out, err = run(capsys, "check", "--suite", "total", "--cases", "2", "--counterexample-dir", str(tmp_path))
    assert code == 1 and len(out["counterexamples"]) == 2
    data = json.loads((tmp_path / "counterexample-total-0-1.json").read_text())
    assert data["replay"] == "ncomplex check --suite total --seed 0 --case 1"
    assert "always fails" in err


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "validate", str(tmp_path / "missing.json"), "--n", "3")[0] == 2
    (tmp_path / "bad.json").write_text("[")
    assert run(capsys, "validate", str(tmp_path / "bad.json"), "--n", "3")[0] == 2
    assert run(capsys, "homology", Z8, "--a", "0", "--b", "1", "--pos", "0")[0] == 2
    assert run(capsys)[0] == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "ncomplex", "validate", Z8], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["n"] == 3
