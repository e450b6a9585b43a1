import json

import numpy as np
import pytest

from drivenqc import cli
from drivenqc.backreaction import ConvergenceError
from drivenqc.grover_sim import GroverConfig, ideal_run


def run(args):
    return cli.main(args)


def test_integrals_passes_reference_checks(tmp_path):
    assert run(["integrals", "--tol", "1e-6", "--out", str(tmp_path)]) == 0
    payload = json.loads((tmp_path / "integrals.json").read_text())
    assert payload["all_passed"] is True
    assert payload["norms"]["alpha"] == pytest.approx(4.3179519, abs=1e-6)
    assert payload["norm_checks"]["minus"]["passed"] is True
    assert payload["overlap_checks"]["alpha_beta"]["passed"] is True
    assert payload["identity_residuals"]["beta_from_alpha"] < 1e-12
    assert payload["identity_residuals"]["minus_from_plus"] < 1e-12


def test_integrals_rejects_csv(tmp_path):
    assert run(["integrals", "--format", "csv", "--out", str(tmp_path)]) == 1


def test_envelopes_csv_shape(tmp_path):
    assert run(["envelopes", "--out", str(tmp_path)]) == 0
    lines = (tmp_path / "envelopes.csv").read_text().splitlines()
    header = lines[0].split(",")
    assert header[0] == "t"
    assert "abs_minus" in header and "re_classical" in header
    assert len(lines) == 1 + 1024
    assert len(lines[1].split(",")) == len(header) == 1 + 3 * 5


def test_grover_ideal_trajectory_matches_module(tmp_path):
    assert run(["grover", "--k", "3", "--y", "2", "--epsilon", "0", "--out", str(tmp_path)]) == 0
    payload = json.loads((tmp_path / "grover_report.json").read_text())
    reference = ideal_run(GroverConfig(k=3, marked=2))
    assert payload["epsilon"] == 0.0
    assert payload["success_decoherent"] is None
    assert [row["a_y"] for row in payload["trajectory"]] == pytest.approx(list(reference.a_y))
    assert payload["success_ideal"] == pytest.approx(reference.success[-1])


def test_grover_decoherent_report(tmp_path):
    assert run(["grover", "--k", "4", "--y", "5", "--epsilon", "1e-3", "--out", str(tmp_path)]) == 0
    payload = json.loads((tmp_path / "grover_report.json").read_text())
    assert payload["total_probability"] == pytest.approx(1.0, abs=1e-8)
    assert payload["scatter_ratio_on_epsilon_doubling"] == pytest.approx(4.0, abs=1e-4)
    assert payload["total_scatter"] > 0.0
    assert len(payload["per_step"]) == 2 * 4 * payload["N"]


def test_grover_scaling_csv(tmp_path):
    assert run(["grover-scaling", "--k", "5", "--out", str(tmp_path)]) == 0
    lines = (tmp_path / "grover_scaling.csv").read_text().splitlines()
    header = lines[0].split(",")
    rows = [dict(zip(header, line.split(","))) for line in lines[1:]]
    assert [int(float(r["k"])) for r in rows] == [2, 3, 4, 5]
    assert all(float(r["rel_difference"]) < 0.1 for r in rows)


def test_cnot_outputs(tmp_path):
    assert run(["cnot", "--out", str(tmp_path)]) == 0
    transfer = json.loads((tmp_path / "cnot_transfer.json").read_text())
    assert transfer["calibrated"]["amplitude"] >= 0.95
    assert transfer["reference"] == {"duration": 100.6, "transfer_probability": 0.97}
    assert transfer["amplitude_at_reference_duration"] < transfer["calibrated"]["amplitude"]
    lines = (tmp_path / "cnot_spectrum.csv").read_text().splitlines()
    assert len(lines) == 1 + 6001
    header = lines[0].split(",")
    assert header[0] == "offset" and "abs_01_to_00" in header


def test_budget_preset_with_ensemble(tmp_path, capsys):
    assert run(["budget", "--preset", "nmr", "--ensemble", "1e17", "--out", str(tmp_path)]) == 0
    payload = json.loads((tmp_path / "budget.json").read_text())
    (report,) = payload["reports"]
    assert abs(report["max_qubits"] - 25) <= 5
    assert "beyond first order" not in capsys.readouterr().out


def test_budget_all_presets_csv(tmp_path):
    assert run(["budget", "--format", "csv", "--out", str(tmp_path)]) == 0
    lines = (tmp_path / "budget.csv").read_text().splitlines()
    assert len(lines) == 1 + 3
    names = sorted(line.split(",")[0] for line in lines[1:])
    assert names == ["be_ion", "esr", "nmr"]


def test_budget_custom_presets_file(tmp_path):
    presets = tmp_path / "p.cfg"
    presets.write_text("tiny.power = 1e-6\ntiny.duration = 1e-6\ntiny.frequency = 1e9\n")
    assert run(["budget", "--preset", "tiny", "--presets", str(presets),
                "--out", str(tmp_path)]) == 0
    payload = json.loads((tmp_path / "budget.json").read_text())
    assert payload["reports"][0]["preset"] == "tiny"


def test_determinism_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert run(["integrals", "--out", str(out)]) == 0
        assert run(["grover", "--k", "3", "--y", "1", "--epsilon", "1e-3", "--out", str(out)]) == 0
        assert run(["envelopes", "--out", str(out)]) == 0
    for name in ("integrals.json", "grover_report.json", "envelopes.csv"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_config_file_supplies_defaults_and_flags_win(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("k = 5\ny = 7\nepsilon = 0\n")
    assert run(["grover", "--config", str(cfg), "--k", "3",
                "--out", str(tmp_path)]) == 0
    payload = json.loads((tmp_path / "grover_report.json").read_text())
    assert payload["K"] == 3  # flag beats config
    assert payload["y"] == 7  # config fills the gap


def test_unknown_config_key_rejected(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("bogus = 1\n")
    assert run(["grover", "--config", str(cfg)]) == 1
    assert "bogus" in capsys.readouterr().err


def test_validation_errors_exit_one(capsys):
    assert run(["grover", "--k", "99"]) == 1
    assert "k must be" in capsys.readouterr().err
    assert run(["budget", "--preset", "nope"]) == 1
    assert "nope" in capsys.readouterr().err


def test_usage_errors_exit_one():
    with pytest.raises(SystemExit) as exc:
        run(["grover", "--k", "three"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        run(["no-such-command"])
    assert exc.value.code == 1


def test_convergence_failure_exits_two(tmp_path, monkeypatch, capsys):
    def explode(**kwargs):
        raise ConvergenceError("residual estimate 1.0 exceeds tol")

    monkeypatch.setattr(cli, "integral_table", explode)
    assert run(["integrals", "--out", str(tmp_path)]) == 2
    assert "did not converge" in capsys.readouterr().err
