"""Tests for cli.py — argument handling, exit codes and report destinations."""

import json
import logging

import pytest

from graded_goldie.cli import EXIT_USAGE, main

REPORT_BUCKET = "verify-reports"


@pytest.fixture(autouse=True)
def restore_logging():
    """main() reconfigures the root logger; put it back afterwards."""
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


class TestMain:
    def test_counterexample_to_file(self, tmp_path):
        out = tmp_path / "report.json"
        code = main(["counterexample", "--samples", "20", "--max-degree", "3", "--out", str(out)])
        assert code == 0
        data = json.loads(out.read_text())
        assert data["suite"] == "counterexample"
        assert data["summary"]["fail"] == 0
        assert data["parameters"]["max_degree"] == 3

    def test_text_to_stdout(self, capsys):
        assert main(["remark1-audit", "--group", "S3", "--format", "text"]) == 0
        assert "[pass] remark1_bound" in capsys.readouterr().out

    def test_settings_file(self, tmp_path):
        settings = tmp_path / "settings.json"
        settings.write_text(json.dumps({"suites": {"star": {"m_max": 7}}, "defaults": {"seed": 3}}))
        out = tmp_path / "star.json"
        assert main(["star", "--config", str(settings), "--out", str(out)]) == 0
        parameters = json.loads(out.read_text())["parameters"]
        assert parameters["m_max"] == 7
        assert parameters["seed"] == 3

    def test_s3_destination(self, s3_client):
        assert main(["star", "--out", f"s3://{REPORT_BUCKET}/runs/star.json"]) == 0
        body = s3_client.get_object(Bucket=REPORT_BUCKET, Key="runs/star.json")["Body"].read()
        assert json.loads(body)["suite"] == "star"

    def test_same_seed_gives_identical_bytes(self, tmp_path):
        argv = ["counterexample", "--seed", "7", "--samples", "20", "--max-degree", "3"]
        first, second = tmp_path / "first.json", tmp_path / "second.json"
        assert main([*argv, "--out", str(first)]) == 0
        assert main([*argv, "--out", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()

    def test_timings_flag(self, tmp_path):
        out = tmp_path / "star.json"
        assert main(["star", "--timings", "--out", str(out)]) == 0
        assert all(c["elapsed_ms"] >= 0 for c in json.loads(out.read_text())["checks"])


class TestUsageErrors:
    @pytest.mark.parametrize(
        "argv",
        [
            ["counterexample", "--field", "fp:4"],
            ["counterexample", "--g", "q"],
            ["counterexample", "--g", "r +"],
            ["counterexample", "--samples", "0"],
            ["group-conditions", "--group", "cyclic:x"],
            ["group-conditions", "--group", "table"],
        ],
    )
    def test_exit_code(self, argv):
        assert main(argv) == EXIT_USAGE

    def test_bad_settings_file(self, tmp_path):
        settings = tmp_path / "settings.json"
        settings.write_text("[")
        assert main(["star", "--config", str(settings)]) == EXIT_USAGE

    def test_unknown_suite(self):
        with pytest.raises(SystemExit) as exc_info:
            main(["nope"])
        assert exc_info.value.code == EXIT_USAGE

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as exc_info:
            main(["--version"])
        assert exc_info.value.code == 0
        assert "verify" in capsys.readouterr().out
