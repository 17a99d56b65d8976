from __future__ import annotations

import json

import pytest

from hodge_spectra import cli
from hodge_spectra.experiments import INCONCLUSIVE, ExperimentResult


def test_mesh_command(capsys, tmp_path):
    assert cli.main(["mesh", "--kind", "torus", "--n", "2", "--cells", "4", "--out", str(tmp_path)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["counts"] == [16, 48, 32] and doc["betti"] == [1, 2, 1]
    assert (tmp_path / "mesh.json").exists() and (tmp_path / "metric.json").exists()


def test_mesh_command_with_cigar(capsys):
    args = ["mesh", "--n", "3", "--cells", "6", "--side", "5", "--cigar-L", "1", "--center", "2.9,2.9,2.9"]
    assert cli.main(args) == 0
    assert json.loads(capsys.readouterr().out)["betti"] == [1, 3, 3, 1]


def test_spectrum_command(capsys, tmp_path):
    assert cli.main(["spectrum", "--kind", "sphere", "--n", "2", "--level", "2", "--p", "1", "--count", "3",
                     "--out", str(tmp_path)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "p,k,lambda,class,multiplicity"
    assert (tmp_path / "spectrum_p1.csv").read_text().splitlines() == lines


def test_experiment_command_writes_outputs(capsys, tmp_path):
    assert cli.main(["experiment", "convergence", "--out", str(tmp_path)]) == 0
    assert "convergence: PASS" in capsys.readouterr().out
    assert (tmp_path / "convergence_checks.csv").exists()
    assert json.loads((tmp_path / "convergence.json").read_text())["status"] == "pass"


def test_inconclusive_exit_code(monkeypatch, capsys):
    monkeypatch.setattr(cli, "run", lambda cfg: ExperimentResult(cfg.name, status=INCONCLUSIVE))
    assert cli.main(["experiment", "gap_closing", "--cigar-L", "0.5,1"]) == 2


def test_bad_inputs_exit_one(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"name": "cigar", "L_schedule": [2.0, 1.0]}))
    assert cli.main(["experiment", "cigar", "--config", str(bad)]) == 1
    other = tmp_path / "other.json"
    other.write_text(json.dumps({"name": "identity"}))
    assert cli.main(["experiment", "cigar", "--config", str(other)]) == 1
    assert cli.main(["mesh", "--kind", "sphere", "--n", "2", "--cigar-L", "1"]) == 1
    assert "error:" in capsys.readouterr().err


def test_unknown_experiment_is_rejected():
    with pytest.raises(SystemExit):
        cli.main(["experiment", "nope"])
