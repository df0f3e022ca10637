"""
Command-Line Front End
Module ID: VDP-CLI-001
Version: 0.1.0

Subcommands:
    solve         optimal discrete control of one instance
    oracle-check  solve plus exhaustive enumeration and certificates
    converge      Euler convergence study for a fixed Lipschitz control
    gap           optimality-gap study of interpolated optimal controls
    costmodel     cost recursion vs closed form, and instrumented counts

Every run writes summary.json (sorted keys, one generated_at timestamp)
and CSV tables into the output directory. Failures print a diagnostic
naming module and stage to stderr and return a distinct exit code.
"""

import argparse
import json
import sys
import uuid
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from src.config.settings import Settings, get_settings, reload_settings
from src.core.constants import BUILTIN_PREFIX, DEFAULT_SEED, EXIT_CODES
from src.core.errors import OracleMismatch, RejectedInputError, VolterraDPError
from src.costmodel import (
    CostParams,
    comparison_table,
    growth_ratios,
    instrument_and_compare,
    predict_closed_form,
    predict_recursive,
)
from src.discretize.interpolation import ConstantControl, RampControl
from src.discretize.io import write_control_csv, write_trajectory_csv
from src.dp.solver import solve
from src.monitoring.logging import LogLevel, configure_logging, get_logger, set_global_context
from src.monitoring.metrics import get_metrics_collector, log_stage_times
from src.oracle import convergence_study, optimality_gap_study, run_oracle_check
from src.problem.library import builtin_names, load_problem
from src.problem.model import VolterraProblem

logger = get_logger(__name__)

COMMANDS = ("solve", "oracle-check", "converge", "gap", "costmodel")
CONTROLS = ("ramp", "constant")

Tables = Dict[str, pd.DataFrame]


@dataclass
class RunConfig:
    """One CLI invocation."""
    command: str
    problem: Optional[str] = None
    N: Optional[int] = None
    N_list: Optional[List[int]] = None
    Q: Optional[int] = None
    use_band: bool = False
    workers: Optional[int] = None
    out_dir: Optional[str] = None
    seed: int = DEFAULT_SEED
    config_file: Optional[str] = None
    log_level: Optional[str] = None
    dump_table: bool = False
    control: str = "ramp"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise RejectedInputError(f"unknown command {self.command!r}", module="cli")
        if self.workers is not None and self.workers < 1:
            raise RejectedInputError(f"workers must be at least 1, got {self.workers}", module="cli")
        if self.N_list is not None and any(b <= a for a, b in zip(self.N_list, self.N_list[1:])):
            raise RejectedInputError(f"N-list must be strictly increasing: {self.N_list}", module="cli")
        if self.control not in CONTROLS:
            raise RejectedInputError(f"control must be one of {CONTROLS}, got {self.control!r}", module="cli")

    def require(self, *names: str) -> None:
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            flags = ", ".join("--" + n.replace("_", "-") for n in missing)
            raise RejectedInputError(f"{self.command} needs {flags}", module="cli")


# ============================================================================
# SUBCOMMANDS
# ============================================================================

def _problem(config: RunConfig) -> VolterraProblem:
    config.require("problem")
    return load_problem(config.problem)


def _cmd_solve(config: RunConfig, settings: Settings, out_dir: Path) -> Tuple[Dict[str, Any], Tables]:
    config.require("N", "Q")
    p = _problem(config)
    metrics = get_metrics_collector()
    metrics.reset()
    report = solve(p, config.N, config.Q, config.use_band, workers=config.workers, metrics=metrics)
    log_stage_times(metrics, "solve")
    grid = report.discrete_problem.grid
    write_control_csv(out_dir / "control.csv", report.control, grid)
    write_trajectory_csv(out_dir / "trajectory.csv", report.trajectory, grid)
    if config.dump_table:
        report.table.dump(out_dir / "value_table.bin")
    return report.to_dict(), {}


def _cmd_oracle_check(config: RunConfig, settings: Settings, out_dir: Path) -> Tuple[Dict[str, Any], Tables]:
    config.require("N", "Q")
    p = _problem(config)
    check = run_oracle_check(
        p, config.N, config.Q, config.use_band,
        workers=config.workers or settings.solver.workers,
        seed=config.seed,
        enumeration_cap=settings.oracle.enumeration_cap,
        value_rtol=settings.oracle.value_rtol,
    )
    certificates = pd.DataFrame(
        [
            {
                "claim": c.claim,
                "is_valid": c.is_valid,
                "skipped": c.skipped,
                "reasoning": c.reasoning,
                "error_details": c.error_details,
            }
            for c in check.certificates
        ]
    )
    return check.to_dict(), {"certificates": certificates}


def _study_control(config: RunConfig, p: VolterraProblem):
    if config.control == "constant":
        return ConstantControl(p.control_box)
    return RampControl(p.control_box, p.lipschitz_budget)


def _cmd_converge(config: RunConfig, settings: Settings, out_dir: Path) -> Tuple[Dict[str, Any], Tables]:
    config.require("N_list")
    p = _problem(config)
    study = convergence_study(
        p, _study_control(config, p), config.N_list,
        workers=config.workers or settings.solver.workers,
        fine_factor=settings.oracle.fine_grid_factor,
    )
    summary = study.summary()
    summary["settings"] = {"problem": p.name, "N_list": config.N_list, "control": config.control}
    return summary, {"convergence": study.frame()}


def _cmd_gap(config: RunConfig, settings: Settings, out_dir: Path) -> Tuple[Dict[str, Any], Tables]:
    config.require("N_list", "Q")
    p = _problem(config)
    study = optimality_gap_study(
        p, config.Q, config.N_list,
        workers=config.workers or settings.solver.workers,
        fine_factor=settings.oracle.fine_grid_factor,
    )
    summary = study.summary()
    summary["settings"] = {"problem": p.name, "N_list": config.N_list, "Q": config.Q, "band": True}
    return summary, {"gap": study.frame()}


def _cmd_costmodel(config: RunConfig, settings: Settings, out_dir: Path) -> Tuple[Dict[str, Any], Tables]:
    table = comparison_table()
    summary: Dict[str, Any] = {
        "comparison": table.to_dict(orient="records"),
        "closed_form_mismatches": int((table["delta"] != 0).sum()),
        "growth_ratios": [{"N": N, "ratio": ratio} for N, ratio in growth_ratios()],
    }
    tables: Tables = {"comparison": table}

    if config.problem is not None:
        config.require("N", "Q")
        p = _problem(config)
        instrumented = instrument_and_compare(p, config.N, config.Q, config.use_band, workers=config.workers)
        summary["instrumented"] = instrumented.to_dict()
        params = CostParams.counting(config.N, instrumented.M)
        prediction = predict_recursive(params).to_dict()
        if instrumented.M > 1:
            prediction["closed_form_total"] = int(predict_closed_form(params))
        summary["prediction"] = prediction
        tables["counters"] = pd.DataFrame([r.to_dict() for r in instrumented.rows])
        if not instrumented.all_match:
            logger.warning("Instrumented counts differ from the cost model", counters=summary["instrumented"])
    return summary, tables


HANDLERS: Dict[str, Callable[[RunConfig, Settings, Path], Tuple[Dict[str, Any], Tables]]] = {
    "solve": _cmd_solve,
    "oracle-check": _cmd_oracle_check,
    "converge": _cmd_converge,
    "gap": _cmd_gap,
    "costmodel": _cmd_costmodel,
}


# ============================================================================
# OUTPUT
# ============================================================================

def _json_default(value: Any) -> Any:
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def write_summary(out_dir: Path, command: str, summary: Dict[str, Any]) -> Path:
    payload = dict(summary)
    payload["command"] = command
    payload["generated_at"] = datetime.now(timezone.utc).isoformat()
    path = out_dir / "summary.json"
    with open(path, "w") as f:
        json.dump(payload, f, indent=2, sort_keys=True, default=_json_default)
        f.write("\n")
    return path


def write_tables(out_dir: Path, tables: Tables, float_format: str) -> List[Path]:
    paths = []
    for name, frame in tables.items():
        path = out_dir / f"{name}.csv"
        frame.to_csv(path, index=False, float_format=float_format)
        paths.append(path)
    return paths


# ============================================================================
# RUN
# ============================================================================

def _setup(config: RunConfig) -> Settings:
    settings = reload_settings(config.config_file) if config.config_file else get_settings()
    name = config.log_level or settings.monitoring.log_level
    try:
        level = LogLevel.from_name(name)
    except KeyError:
        raise RejectedInputError(f"unknown log level {name!r}", module="cli")
    configure_logging(
        level=level,
        format_json=settings.monitoring.log_format == "json",
        file_path=settings.monitoring.log_file,
    )
    set_global_context(run_id=uuid.uuid4().hex[:12], operation=config.command)
    return settings


def run(config: RunConfig) -> int:
    """Execute one subcommand; returns the process exit code."""
    try:
        settings = _setup(config)
        out_dir = Path(config.out_dir or settings.output.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)

        summary, tables = HANDLERS[config.command](config, settings, out_dir)
        write_tables(out_dir, tables, settings.output.float_format)
        write_summary(out_dir, config.command, summary)

        if config.command == "oracle-check" and not summary.get("all_valid", False):
            failed = [c["claim"] for c in summary["certificates"] if not (c["is_valid"] or c["skipped"])]
            raise OracleMismatch(f"certificates failed: {', '.join(failed)}", module="oracle")

        logger.info(f"{config.command} finished", out_dir=str(out_dir))
        return EXIT_CODES["ok"]
    except VolterraDPError as e:
        print(e.diagnostic(), file=sys.stderr)
        logger.error(e.diagnostic(), exit_code=e.exit_code)
        return e.exit_code
    except Exception as e:
        logger.exception(f"Unexpected failure in {config.command}: {e}")
        print(f"[cli] {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_CODES["unexpected"]


# ============================================================================
# ARGUMENTS
# ============================================================================

def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vdp",
        description="Dynamic programming for optimal control of Volterra integral equations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name in COMMANDS:
        cmd = sub.add_parser(name)
        cmd.add_argument(
            "--problem",
            help=f"problem JSON file or {BUILTIN_PREFIX}<name> ({', '.join(builtin_names())})",
        )
        cmd.add_argument("--N", type=int, dest="N", help="number of Euler steps")
        cmd.add_argument("--N-list", type=_int_list, dest="N_list", help="strictly increasing steps, e.g. 8,16,32")
        cmd.add_argument("--Q", type=int, dest="Q", help="quantization points per control coordinate")
        cmd.add_argument("--band", action="store_true", help="enforce |u(i+1) - u(i)| <= L h")
        cmd.add_argument("--workers", type=int, help="worker threads (default from settings)")
        cmd.add_argument("--out", dest="out_dir", help="output directory")
        cmd.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized checks")
        cmd.add_argument("--config", dest="config_file", help="settings JSON file")
        cmd.add_argument("--log-level", help="DEBUG, INFO, WARNING, ERROR or CRITICAL")
        if name == "solve":
            cmd.add_argument("--dump-table", action="store_true", help="write value_table.bin")
        if name == "converge":
            cmd.add_argument("--control", choices=CONTROLS, default="ramp", help="study control")
    return parser


def parse_run_config(argv: Optional[Sequence[str]] = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    return RunConfig(
        command=args.command,
        problem=args.problem,
        N=args.N,
        N_list=args.N_list,
        Q=args.Q,
        use_band=args.band,
        workers=args.workers,
        out_dir=args.out_dir,
        seed=args.seed,
        config_file=args.config_file,
        log_level=args.log_level,
        dump_table=getattr(args, "dump_table", False),
        control=getattr(args, "control", "ramp"),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        config = parse_run_config(argv)
    except RejectedInputError as e:
        print(e.diagnostic(), file=sys.stderr)
        return e.exit_code
    return run(config)
