"""End-to-end command line behaviour: exit codes, reports, batch runs."""

import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"

# A register-spanning workload whose measurements are deterministic: the pi
# rotation puts qubit 0 fully in |1> (up to 1e-18, which rounds away in
# float64), the CNOT copies it, and both reads then always see 1.
EXAMPLE = "INIT\nROT 0 3.14159265 0.0\nCNOT 0 1\nMEASURE 0\nMEASURE 1\n"


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "spintip", *args], capture_output=True, text=True
    )


@pytest.fixture
def example_circuit(tmp_path):
    path = tmp_path / "example.circuit"
    path.write_text(EXAMPLE, encoding="utf-8")
    return path


class TestSingleRuns:
    def test_example_circuit_reports_ones(self, example_circuit):
        done = run_cli("--circuit", str(example_circuit), "--seed", "3")
        assert done.returncode == 0, done.stderr
        report = json.loads(done.stdout)
        assert report["seed"] == 3
        assert len(report["measurements"]) == 6  # 4 init reads + 2 finals
        finals = report["measurements"][-2:]
        assert [m["inferred_p_bit"] for m in finals] == [1, 1]
        assert report["status"] == {"exit_code": 0, "reasons": []}
        assert report["final_state"]["norm"] == pytest.approx(1.0, abs=1e-12)
        assert report["pulses"]["spectral_misses"] == []

    def test_reports_are_byte_identical_for_a_seed(self, example_circuit):
        first = run_cli("--circuit", str(example_circuit), "--seed", "11")
        second = run_cli("--circuit", str(example_circuit), "--seed", "11")
        assert first.returncode == second.returncode == 0
        assert first.stdout == second.stdout

    def test_unseeded_runs_announce_their_seed(self, example_circuit):
        done = run_cli("--circuit", str(example_circuit))
        assert done.returncode == 0
        assert "seed:" in done.stderr
        announced = int(done.stderr.split("seed:", 1)[1].split()[0])
        assert json.loads(done.stdout)["seed"] == announced

    def test_empty_circuit_is_fine(self, tmp_path):
        path = tmp_path / "empty.circuit"
        path.write_text("# nothing yet\n", encoding="utf-8")
        done = run_cli("--circuit", str(path), "--seed", "0")
        assert done.returncode == 0
        report = json.loads(done.stdout)
        assert report["measurements"] == []
        assert report["circuit"] == []

    def test_dump_state_writes_the_final_vector(self, example_circuit, tmp_path):
        dump = tmp_path / "final.state"
        done = run_cli(
            "--circuit", str(example_circuit), "--seed", "5", "--dump-state", str(dump)
        )
        assert done.returncode == 0
        report = json.loads(done.stdout)
        assert report["final_state"]["dump_file"] == str(dump)
        lines = dump.read_text().splitlines()
        assert len(lines) == 1
        bits, real, imag = lines[0].split()
        assert bits == "10100"
        assert abs(float(real)) < 1e-12
        assert float(imag) == pytest.approx(-1.0, abs=1e-12)

    def test_scheduler_section_appears_with_tips(self, example_circuit):
        done = run_cli("--circuit", str(example_circuit), "--seed", "2", "--tips", "2")
        assert done.returncode == 0
        section = json.loads(done.stdout)["scheduler"]
        assert section["tips"] == 2
        assert section["makespan_s"] > 0
        assert section["validator_problems"] == []
        assert len(section["per_task_tip"]) == 6  # 2 init tasks + 4 gates

    def test_verification_payload(self, example_circuit):
        done = run_cli("--circuit", str(example_circuit), "--seed", "1", "--verify-frequencies")
        assert done.returncode == 0
        verification = json.loads(done.stdout)["verification"]
        assert verification["passed"] is True
        assert verification["all_formulas_matched"] is True
        assert verification["worst_formula_residual_hz"] <= 1e-6
        assert verification["cnot_fidelity"] >= 1.0 - 1e-9
        assert verification["ancilla_purity"] >= 1.0 - 1e-9
        assert len(verification["frequency_audit"]) == 6

    def test_trace_readout_still_infers_the_right_bits(self, example_circuit):
        done = run_cli(
            "--circuit", str(example_circuit), "--seed", "9", "--trace-snr", "10"
        )
        assert done.returncode == 0
        finals = json.loads(done.stdout)["measurements"][-2:]
        assert [m["inferred_p_bit"] for m in finals] == [1, 1]


class TestFailureModes:
    def test_parse_errors_point_at_the_line(self, tmp_path):
        path = tmp_path / "broken.circuit"
        path.write_text("INIT\nWOBBLE 3\n", encoding="utf-8")
        done = run_cli("--circuit", str(path), "--seed", "0")
        assert done.returncode == 2
        assert "broken.circuit:2" in done.stderr

    def test_missing_circuit_file(self, tmp_path):
        done = run_cli("--circuit", str(tmp_path / "ghost.circuit"), "--seed", "0")
        assert done.returncode == 2
        assert "error" in done.stderr

    def test_bad_config_exits_two(self, example_circuit, tmp_path):
        config = tmp_path / "bad.config"
        config.write_text("warp_speed = 9\n", encoding="utf-8")
        done = run_cli("--circuit", str(example_circuit), "--config", str(config))
        assert done.returncode == 2
        assert "warp_speed" in done.stderr

    def test_needs_exactly_one_input_mode(self, example_circuit, tmp_path):
        assert run_cli().returncode == 2
        both = run_cli("--circuit", str(example_circuit), "--batch", str(tmp_path))
        assert both.returncode == 2

    def test_unknown_flag_exits_two(self):
        assert run_cli("--warp").returncode == 2

    def test_zero_tips_rejected(self, example_circuit):
        done = run_cli("--circuit", str(example_circuit), "--tips", "0")
        assert done.returncode == 2

    def test_unphysical_drive_line_exits_three(self, monkeypatch, tmp_path, capsys):
        # Force the compiler to emit a drive at 1 Hz: it can hit nothing, and
        # the run must say so loudly rather than quietly doing nothing.
        import spintip.cli as cli
        import spintip.compiler as compiler

        monkeypatch.setattr(compiler, "rotation_frequency", lambda qubit, layout, cfg: 1.0)
        path = tmp_path / "detuned.circuit"
        path.write_text("ROT 0 1.0 0.0\n", encoding="utf-8")
        code = cli.main(["--circuit", str(path), "--seed", "1"])
        assert code == 3
        report = json.loads(capsys.readouterr().out)
        assert report["status"]["exit_code"] == 3
        assert report["pulses"]["spectral_misses"] == [1]
        assert any("no transition line" in reason for reason in report["status"]["reasons"])

    def test_budget_enforcement_exits_four(self, example_circuit, tmp_path):
        config = tmp_path / "short.config"
        config.write_text("coherence_time = 1e-6\n", encoding="utf-8")
        done = run_cli(
            "--circuit", str(example_circuit), "--config", str(config),
            "--seed", "0", "--enforce-budget",
        )
        assert done.returncode == 4
        report = json.loads(done.stdout)
        assert report["timing"]["feasible"] is False
        assert any("coherence" in reason for reason in report["status"]["reasons"])

    def test_budget_not_enforced_by_default(self, example_circuit, tmp_path):
        config = tmp_path / "short.config"
        config.write_text("coherence_time = 1e-6\n", encoding="utf-8")
        done = run_cli(
            "--circuit", str(example_circuit), "--config", str(config), "--seed", "0"
        )
        assert done.returncode == 0


class TestBatchRuns:
    def test_batch_runs_every_circuit_with_derived_seeds(self, tmp_path):
        (tmp_path / "a.circuit").write_text("INIT\nMEASURE 0\n", encoding="utf-8")
        (tmp_path / "b.circuit").write_text(EXAMPLE, encoding="utf-8")
        done = run_cli("--batch", str(tmp_path), "--seed", "7")
        assert done.returncode == 0
        assert done.stdout.splitlines() == ["a.circuit: exit 0", "b.circuit: exit 0"]
        report_a = json.loads((tmp_path / "a.report.json").read_text())
        report_b = json.loads((tmp_path / "b.report.json").read_text())
        assert report_a["seed"] == 7
        assert report_b["seed"] == 8

    def test_batch_keeps_going_after_a_bad_file(self, tmp_path):
        (tmp_path / "bad.circuit").write_text("NOPE\n", encoding="utf-8")
        (tmp_path / "good.circuit").write_text(EXAMPLE, encoding="utf-8")
        done = run_cli("--batch", str(tmp_path), "--seed", "0")
        assert done.returncode == 2
        assert "bad.circuit: exit 2" in done.stdout
        assert "good.circuit: exit 0" in done.stdout
        assert (tmp_path / "good.report.json").exists()
        assert not (tmp_path / "bad.report.json").exists()

    def test_empty_batch_directory_exits_two(self, tmp_path):
        done = run_cli("--batch", str(tmp_path))
        assert done.returncode == 2


class TestEntryPoints:
    def test_console_script_is_installed(self):
        script = shutil.which("spintip")
        assert script, "console script missing from PATH"
        done = subprocess.run([script, "--help"], capture_output=True, text=True)
        assert done.returncode == 0
        assert "--circuit" in done.stdout


class TestGoldenReport:
    def test_report_matches_the_checked_in_golden_file(self, capsys):
        # Pin the whole report surface against a reviewed artifact; any
        # change to physics, compilation, timing, or report layout shows up
        # here as a diff to explain.
        import spintip.cli as cli

        code = cli.main(["--circuit", str(DATA / "golden.circuit"), "--seed", "42"])
        assert code == 0
        produced = json.loads(capsys.readouterr().out)
        golden = json.loads((DATA / "golden_report.json").read_text(encoding="utf-8"))
        assert produced == golden
