"""Tests for the command-line interface."""

import json

import numpy as np
import pytest
import yaml

from powerstormer import __version__
from powerstormer.cli import EXIT_IO, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, main
from powerstormer.decomp import Pivot, parallel_min
from powerstormer.harness import TrialConfig, run_suite
from powerstormer.linalg import HermitianMatrix
from powerstormer.matrix_io import read_matrix, write_matrix

VERIFY = ["--quiet", "verify", "--dims", "2", "--trials", "2", "--alphas", "0:1:0.5", "--seed", "3"]


@pytest.fixture
def matrix_files(tmp_path, density_pair):
    a, b = density_pair
    return str(write_matrix(a, tmp_path / "a.txt")), str(write_matrix(b, tmp_path / "b.txt"))


def test_version(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["--version"])
    assert excinfo.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_missing_command():
    with pytest.raises(SystemExit) as excinfo:
        main([])
    assert excinfo.value.code == 2


@pytest.mark.integration
class TestVerify:
    def test_json_to_stdout(self, capsys):
        assert main(VERIFY) == EXIT_OK
        body = json.loads(capsys.readouterr().out)
        assert body["summary"]["failed"] == 0
        assert body["config"]["dims"] == [2]
        assert body["config"]["master_seed"] == 3

    def test_csv_to_file(self, tmp_path):
        out = tmp_path / "report.csv"
        assert main(VERIFY + ["--format", "csv", "--out", str(out)]) == EXIT_OK
        assert out.read_text(encoding="utf-8").startswith("id,alpha,norm,dim,ensemble")

    def test_matches_library_run(self, tmp_path):
        out = tmp_path / "report.json"
        assert main(VERIFY + ["--checks", "TraceUpper,TraceLower", "--out", str(out)]) == EXIT_OK
        config = TrialConfig.build(
            dims=[2], trials_per_dim=2, alpha_grid="0:1:0.5", master_seed=3, checks=["TraceUpper", "TraceLower"]
        )
        expected = run_suite(config)
        assert json.loads(out.read_text(encoding="utf-8"))["summary"]["total"] == expected.total

    @pytest.mark.parametrize(
        "extra",
        [["--alphas", "0.5,1.5"], ["--alphas", ""], ["--norms", "kyfan:3"], ["--checks", "Bogus"], ["--tol-rel", "-1"]],
    )
    def test_invalid_configuration(self, extra, capsys):
        assert main(VERIFY + extra) == EXIT_USAGE
        assert "error" in capsys.readouterr().err

    def test_unwritable_output(self, tmp_path):
        assert main(VERIFY + ["--out", str(tmp_path / "missing" / "report.json")]) == EXIT_IO

    def test_config_file(self, tmp_path, capsys):
        config = tmp_path / "campaign.yaml"
        config.write_text(yaml.safe_dump({"campaign": {"checks": ["TraceUpper"]}}), encoding="utf-8")
        assert main(["--config", str(config)] + VERIFY) == EXIT_OK
        body = json.loads(capsys.readouterr().out)
        assert body["config"]["checks"] == ["TraceUpper"]

    def test_missing_config_file(self, tmp_path):
        assert main(["--config", str(tmp_path / "nope.yaml")] + VERIFY) == EXIT_USAGE

    def test_unwritable_log_file(self, tmp_path):
        assert main(["--log-file", str(tmp_path / "missing" / "run.log")] + VERIFY[1:]) == EXIT_IO

    def test_events_file(self, tmp_path):
        events = tmp_path / "events.jsonl"
        assert main(["--events-file", str(events)] + VERIFY + ["--out", str(tmp_path / "r.json")]) == EXIT_OK
        names = [json.loads(line)["event"] for line in events.read_text(encoding="utf-8").splitlines()]
        assert names[0] == "suite.start"
        assert names[-1] == "suite.finish"

    def test_violation_exit_code(self, mocker, capsys):
        report = run_suite(TrialConfig.build(dims=[2], trials_per_dim=1, checks=["TraceUpper"]))
        cell = report.cells[0]
        cell.pass_count = cell.count - 1
        cell.worst_slack = -1.0
        mocker.patch("powerstormer.cli.run_suite", return_value=report)
        assert main(VERIFY) == EXIT_VIOLATION
        assert "Worst cell descriptor" in capsys.readouterr().err

    def test_pure_state_campaign_fails(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        argv = ["--quiet", "verify", "--dims", "4", "--trials", "6", "--alphas", "0.5", "--ensembles", "pure",
                "--checks", "EigDominance", "--out", str(out)]
        assert main(argv) == EXIT_VIOLATION
        summary = json.loads(out.read_text(encoding="utf-8"))["summary"]
        assert summary["failed"] > 0
        assert summary["failed_by_ensemble"] == {"pure": summary["failed"]}
        assert '"ensemble": "pure"' in capsys.readouterr().err



@pytest.mark.integration
class TestReplay:
    def _descriptor(self, tmp_path):
        out = tmp_path / "report.json"
        assert main(VERIFY + ["--out", str(out)]) == EXIT_OK
        return json.loads(out.read_text(encoding="utf-8"))["checks"][0]["argmin"]

    def test_descriptor_file(self, tmp_path, capsys):
        path = tmp_path / "descriptor.json"
        path.write_text(json.dumps(self._descriptor(tmp_path)), encoding="utf-8")
        capsys.readouterr()
        assert main(["--quiet", "replay", str(path)]) == EXIT_OK
        out = capsys.readouterr().out
        assert "A =" in out
        assert "hash mismatch" not in out

    def test_inline_descriptor(self, tmp_path, capsys):
        descriptor = json.dumps(self._descriptor(tmp_path))
        assert main(["--quiet", "replay", descriptor]) == EXIT_OK

    def test_malformed_descriptor(self):
        assert main(["--quiet", "replay", "{not json"]) == EXIT_USAGE

    def test_missing_descriptor_file(self, tmp_path):
        assert main(["--quiet", "replay", str(tmp_path / "missing.json")]) == EXIT_IO


class TestChernoff:
    def test_json_output(self, matrix_files, capsys):
        assert main(["--quiet", "chernoff", *matrix_files, "--json"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert 0.0 <= payload["alpha_star"] <= 1.0
        assert payload["bound_slack"] >= -1e-9
        assert payload["half_trace_lower_bound"] == pytest.approx(1.0 - payload["trace_distance"], abs=1e-12)

    def test_text_output(self, matrix_files, capsys):
        assert main(["--quiet", "chernoff", *matrix_files]) == EXIT_OK
        assert "alpha*" in capsys.readouterr().out

    def test_indefinite_matrix(self, tmp_path, matrix_files):
        bad = write_matrix(HermitianMatrix.diag([1.0, -1.0, 0.0]), tmp_path / "bad.txt")
        assert main(["--quiet", "chernoff", str(bad), matrix_files[1]]) == EXIT_USAGE

    def test_missing_file(self, tmp_path, matrix_files):
        assert main(["--quiet", "chernoff", str(tmp_path / "none.txt"), matrix_files[1]]) == EXIT_IO


class TestMinpair:
    def test_writes_file(self, tmp_path, matrix_files, density_pair):
        out = tmp_path / "s.txt"
        assert main(["--quiet", "minpair", *matrix_files, "--out", str(out)]) == EXIT_OK
        expected = parallel_min(*density_pair, Pivot.B).s
        assert np.allclose(read_matrix(out).entries, expected.entries, atol=1e-15)

    def test_stdout_with_pivot_a(self, matrix_files, capsys):
        assert main(["--quiet", "minpair", *matrix_files, "--pivot", "A"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[0] == "3"

    def test_malformed_matrix(self, tmp_path, matrix_files):
        bad = tmp_path / "bad.txt"
        bad.write_text("2\n1 0\n", encoding="utf-8")
        assert main(["--quiet", "minpair", str(bad), matrix_files[1]]) == EXIT_USAGE


class TestConfigCommand:
    def test_show(self, capsys):
        assert main(["--quiet", "config"]) == EXIT_OK
        assert yaml.safe_load(capsys.readouterr().out)["campaign"]["trials_per_dim"] == 200

    def test_init_and_path(self, isolated_config, capsys):
        assert main(["--quiet", "config", "--init"]) == EXIT_OK
        assert (isolated_config / "config.yaml").exists()
        capsys.readouterr()
        assert main(["--quiet", "config", "--path"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == str(isolated_config / "config.yaml")
