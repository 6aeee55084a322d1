"""
Command-line entry point.

    qclab solve --config run.json --out out/solve
    qclab lieb theorem-a --config lieb.json --grid-l 12
    qclab verify all --out out/verify

Exit codes: 0 pass, 1 verification failure, 2 usage or configuration
error, 3 numerical failure (diagnostics.json is written to --out).
"""

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import scipy.fft
from pydantic import ValidationError

from .cli.commands import run_experiment
from .cli.schemas import ExperimentConfig
from .cli.suites import SUITES, verify_suite
from .config.settings import Settings, get_settings
from .core.errors import InvalidArgumentError, QCLabError
from .infrastructure.codecs import dump_json, dump_report
from .infrastructure.storage import ArtifactStore, StorageError, create_artifact_store

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

GROUPS: dict[str, tuple[str, ...]] = {
    "lieb": ("project", "section", "theorem-a", "invariance"),
    "motion": ("trace", "probe"),
    "jordan": ("report",),
}


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="experiment config (JSON)")
    common.add_argument("--out", type=Path, help="output directory (default: settings.output_dir)")
    common.add_argument("--seed", type=int)
    common.add_argument("--grid-n", type=int)
    common.add_argument("--grid-l", type=float)
    common.add_argument("--tol-scale", type=float)
    common.add_argument("--log-level")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="qclab", description="Numerical laboratory for quasiconformal maps."
    )
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser("solve", parents=[common], help="solve the Beltrami equation for mu")
    commands.add_parser("de-extend", parents=[common], help="barycentric extension of a circle map")
    for group, actions in GROUPS.items():
        sub = commands.add_parser(group, help=f"{group} experiments")
        sub_actions = sub.add_subparsers(dest="action", required=True)
        for action in actions:
            sub_actions.add_parser(action, parents=[common])
    commands.add_parser("render", parents=[common], help="SVG figures")

    verify = commands.add_parser("verify", parents=[common], help="run an acceptance suite")
    verify.add_argument("suite", help=f"one of: all, {', '.join(SUITES)}")
    return parser


def command_name(args: argparse.Namespace) -> str:
    action = getattr(args, "action", None)
    return f"{args.command}-{action}" if action else str(args.command)


def resolve_settings(args: argparse.Namespace, base: Settings | None = None) -> Settings:
    """Settings with the per-run CLI overrides applied."""
    base = base or get_settings()
    updates: dict[str, Any] = {
        name: value
        for name, value in (
            ("seed", args.seed),
            ("grid_n", args.grid_n),
            ("grid_l", args.grid_l),
            ("tol_scale", args.tol_scale),
            ("log_level", args.log_level),
            ("output_dir", str(args.out) if args.out else None),
        )
        if value is not None
    }
    settings = base.model_copy(update=updates)
    problems = settings.validate_required_fields()
    if problems:
        raise InvalidArgumentError("; ".join(problems))
    return settings


def load_config(args: argparse.Namespace, command: str) -> ExperimentConfig:
    """Read and validate the experiment config; CLI flags win over the file."""
    data: dict[str, Any] = {}
    if args.config is not None:
        try:
            data = json.loads(args.config.read_text(encoding="utf-8"))
        except OSError as exc:
            raise InvalidArgumentError(f"cannot read config {args.config}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InvalidArgumentError(f"malformed JSON in {args.config}: {exc}") from exc
        if not isinstance(data, dict):
            raise InvalidArgumentError("the config must be a JSON object")

    declared = data.get("command")
    if declared is not None and declared != command:
        raise InvalidArgumentError(f"config is for '{declared}', not '{command}'")
    data["command"] = command

    if args.grid_n is not None or args.grid_l is not None:
        grid = dict(data.get("grid") or {})
        if args.grid_l is not None:
            grid["l"] = args.grid_l
        if args.grid_n is not None:
            grid["n"] = args.grid_n
        grid.setdefault("l", get_settings().grid_l)
        grid.setdefault("n", get_settings().grid_n)
        data["grid"] = grid
    if args.seed is not None:
        data["seed"] = args.seed
    return ExperimentConfig.model_validate(data)


def _write_diagnostics(store: ArtifactStore, exc: QCLabError) -> None:
    details: dict[str, Any] = {"error": type(exc).__name__, "message": str(exc)}
    for attr in ("diagnostics", "report", "nodes"):
        if hasattr(exc, attr):
            details[attr] = getattr(exc, attr)
    try:
        store.write_text("diagnostics.json", dump_json(details))
    except (StorageError, TypeError, ValueError) as write_error:
        logger.error("Could not write diagnostics", extra={"error": str(write_error)})


def execute(args: argparse.Namespace, settings: Settings) -> int:
    """Validate everything, then run; returns the exit code."""
    command = command_name(args)
    if command == "verify" and args.suite not in ("all", *SUITES):
        raise InvalidArgumentError(f"unknown suite '{args.suite}'")
    config = None if command == "verify" else load_config(args, command)

    store = create_artifact_store(settings.output_dir)
    try:
        with scipy.fft.set_workers(settings.worker_count):
            if command == "verify":
                result = verify_suite(args.suite, settings)
                store.write_text("results.json", dump_report(result))
                passed = result.passed
            else:
                assert config is not None
                passed = run_experiment(config, settings, store).passed
    except InvalidArgumentError:
        raise
    except QCLabError as exc:
        logger.error(
            "Numerical failure",
            extra={"command": command, "error_type": type(exc).__name__, "error": str(exc)},
        )
        _write_diagnostics(store, exc)
        return EXIT_NUMERICAL
    return EXIT_PASS if passed else EXIT_FAIL


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        settings = resolve_settings(args)
    except (InvalidArgumentError, ValidationError) as exc:
        print(f"qclab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    logging.basicConfig(
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        level=settings.log_level.upper(),
    )

    try:
        return execute(args, settings)
    except (InvalidArgumentError, ValidationError) as exc:
        logger.error("Invalid input", extra={"command": command_name(args), "error": str(exc)})
        print(f"qclab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StorageError as exc:
        logger.error("Storage failure", extra={"error": str(exc)})
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
