"""
Integration Tests for the Command-Line Front End
Module ID: VDP-TEST-CLI-001
Version: 0.1.0

VERSION CONTROL FOOTER
File: tests/test_cli.py
Version: 0.1.0
Last Modified: 2026-10-17T00:00:00Z
Git Hash: INITIAL
"""

import json

import pandas as pd
import pytest

from src.cli import RunConfig, main, parse_run_config
from src.core.constants import EXIT_CODES
from src.core.errors import RejectedInputError
from src.problem import builtin_config


def _summary(out_dir):
    with open(out_dir / "summary.json") as f:
        return json.load(f)


@pytest.mark.integration
def test_solve_zero_problem(out_dir):
    """Solving the zero problem yields value 0 and the lowest-index control."""
    code = main(["solve", "--problem", "builtin:zero", "--N", "3", "--Q", "2", "--out", str(out_dir)])
    assert code == 0
    summary = _summary(out_dir)
    assert summary["value"] == 0.0
    assert summary["control_indices"] == [0, 0, 0]
    assert summary["command"] == "solve"
    assert "generated_at" in summary
    control = pd.read_csv(out_dir / "control.csv")
    assert list(control.columns) == ["i", "t", "u_1"]
    assert len(pd.read_csv(out_dir / "trajectory.csv")) == 4


@pytest.mark.integration
def test_solve_lq_with_band_and_table(out_dir):
    code = main([
        "solve", "--problem", "builtin:lq", "--N", "2", "--Q", "3", "--band",
        "--dump-table", "--out", str(out_dir),
    ])
    assert code == 0
    summary = _summary(out_dir)
    assert summary["value"] == 0.5
    assert summary["control"] == [[0.5], [0.5]]
    assert summary["settings"]["band"] is True
    assert (out_dir / "value_table.bin").stat().st_size == 13 * 8


@pytest.mark.integration
def test_solve_problem_file(out_dir, temp_dir):
    path = temp_dir / "integrator.json"
    path.write_text(json.dumps(builtin_config("lq")))
    assert main(["solve", "--problem", str(path), "--N", "2", "--Q", "3", "--out", str(out_dir)]) == 0
    assert _summary(out_dir)["value"] == 0.5


@pytest.mark.integration
def test_oracle_check_lq(out_dir):
    code = main(["oracle-check", "--problem", "builtin:lq", "--N", "4", "--Q", "3", "--band", "--out", str(out_dir)])
    assert code == 0
    summary = _summary(out_dir)
    assert summary["values_match"] is True
    assert summary["dp_value"] == summary["oracle_value"]
    assert summary["all_valid"] is True
    certificates = pd.read_csv(out_dir / "certificates.csv")
    assert certificates["is_valid"].all()
    assert not certificates["skipped"].any()
    assert summary["skipped"] == []


@pytest.mark.integration
def test_capacity_exit_code(out_dir, capsys):
    code = main(["solve", "--problem", "builtin:lq", "--N", "30", "--Q", "3", "--out", str(out_dir)])
    assert code == EXIT_CODES["capacity_error"]
    err = capsys.readouterr().err
    assert "CapacityError" in err
    assert not (out_dir / "summary.json").exists()


@pytest.mark.integration
@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "--problem", "builtin:nope", "--N", "2", "--Q", "2"],
        ["solve", "--problem", "builtin:lq", "--Q", "2"],
        ["solve", "--problem", "builtin:lq", "--N", "2", "--Q", "1"],
        ["converge", "--problem", "builtin:lq", "--N-list", "8,4,16"],
        ["solve", "--problem", "builtin:lq", "--N", "2", "--Q", "2", "--log-level", "LOUD"],
    ],
)
def test_rejected_input_exit_code(out_dir, argv, capsys):
    assert main(argv + ["--out", str(out_dir)]) == EXIT_CODES["input_error"]
    assert "RejectedInputError" in capsys.readouterr().err


@pytest.mark.integration
def test_unknown_command_is_argparse_error():
    with pytest.raises(SystemExit) as exc:
        main(["optimize"])
    assert exc.value.code == 2


@pytest.mark.integration
def test_summaries_do_not_depend_on_workers(temp_dir):
    """Apart from generated_at, summary.json is byte-identical for any worker count."""
    texts = []
    for workers in (1, 2, 4):
        out = temp_dir / f"w{workers}"
        code = main([
            "solve", "--problem", "builtin:memory_decay", "--N", "4", "--Q", "3",
            "--workers", str(workers), "--out", str(out),
        ])
        assert code == 0
        summary = _summary(out)
        del summary["generated_at"]
        texts.append(json.dumps(summary, sort_keys=True))
        assert (out / "control.csv").read_bytes() == (temp_dir / "w1" / "control.csv").read_bytes()
    assert texts[0] == texts[1] == texts[2]


@pytest.mark.integration
def test_converge_ramp(out_dir):
    code = main(["converge", "--problem", "builtin:lq", "--N-list", "4,8,16", "--out", str(out_dir)])
    assert code == 0
    summary = _summary(out_dir)
    assert summary["reference"] == "linear"
    assert summary["state_order"] == pytest.approx(1.0, abs=1e-6)
    assert len(pd.read_csv(out_dir / "convergence.csv")) == 3


@pytest.mark.integration
def test_gap_study(out_dir, temp_dir):
    settings_path = temp_dir / "vdp.json"
    settings_path.write_text(json.dumps({"oracle": {"fine_grid_factor": 16}}))
    code = main([
        "gap", "--problem", "builtin:zero", "--N-list", "2,4", "--Q", "2",
        "--config", str(settings_path), "--out", str(out_dir),
    ])
    assert code == 0
    summary = _summary(out_dir)
    assert summary["N_fine"] == 64
    assert [row["gap"] for row in summary["rows"]] == [0.0, 0.0]


@pytest.mark.integration
def test_costmodel_without_problem(out_dir):
    assert main(["costmodel", "--out", str(out_dir)]) == 0
    summary = _summary(out_dir)
    assert len(summary["comparison"]) == 30
    assert "instrumented" not in summary
    assert len(pd.read_csv(out_dir / "comparison.csv")) == 30


@pytest.mark.integration
def test_costmodel_instrumented(out_dir):
    code = main(["costmodel", "--problem", "builtin:lq", "--N", "3", "--Q", "3", "--out", str(out_dir)])
    assert code == 0
    summary = _summary(out_dir)
    assert summary["instrumented"]["all_match"] is True
    assert summary["prediction"]["executed_total"] == 66
    counters = pd.read_csv(out_dir / "counters.csv")
    assert counters["match"].all()


@pytest.mark.unit
class TestRunConfig:

    def test_parse(self):
        config = parse_run_config(["gap", "--problem", "builtin:lq", "--N-list", "4,8", "--Q", "3", "--workers", "2"])
        assert config.command == "gap"
        assert config.N_list == [4, 8]
        assert config.workers == 2
        assert config.use_band is False

    def test_require(self):
        config = RunConfig(command="solve", problem="builtin:lq")
        with pytest.raises(RejectedInputError, match="--N, --Q"):
            config.require("N", "Q")

    def test_invalid_workers(self):
        with pytest.raises(RejectedInputError):
            RunConfig(command="solve", workers=0)

    def test_control_flag_only_on_converge(self):
        with pytest.raises(SystemExit):
            parse_run_config(["solve", "--control", "constant"])
        assert parse_run_config(["converge", "--control", "constant"]).control == "constant"
