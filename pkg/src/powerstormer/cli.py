"""
Command-line interface.

    powerstormer verify   run a verification campaign and write a report
    powerstormer replay   re-run one trial from a report descriptor
    powerstormer chernoff Chernoff quantity of two matrix files
    powerstormer minpair  common lower bound min{A, B} of two matrix files
    powerstormer config   show the resolved configuration or create the user file

Exit codes: 0 success, 1 inequality violation (or an internal numerical
failure), 2 usage or configuration error, 3 I/O error.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

from powerstormer import __version__
from powerstormer.config import ConfigManager
from powerstormer.decomp import Pivot, parallel_min, sum_minus_abs
from powerstormer.exceptions import (ConfigError, InvalidInput, NotPSD, PowerStormerError,
                                     ReportIOError)
from powerstormer.harness.config import TrialConfig
from powerstormer.harness.replay import replay
from powerstormer.harness.report import TrialDescriptor, write_report
from powerstormer.harness.runner import run_suite
from powerstormer.inequalities import chernoff_exponent, trace_distance
from powerstormer.logging_setup import configure_logging
from powerstormer.matrix_io import format_matrix, read_matrix, write_matrix
from powerstormer.norms import NormSpec
from powerstormer.tolerance import ToleranceModel
from powerstormer.utils.serialization import canonical_json, finite_or_none

logger = logging.getLogger("PowerStormer.CLI")

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _add_tolerance_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol-rel", type=float, default=None, help="Relative tolerance (default from config: 1e-8)")
    parser.add_argument("--tol-abs", type=float, default=None, help="Absolute tolerance floor (default from config: 1e-12)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="powerstormer",
        description="Verify matrix inequalities between A + B - |A - B| and A^alpha B^(1-alpha).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", default=None, help="YAML file layered over the user configuration")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    parser.add_argument("--log-file", default=None, help="Write log records to this file")
    parser.add_argument("--events-file", default=None, help="Append structured events as JSON lines to this file")
    parser.add_argument("--quiet", action="store_true", help="Suppress log output")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="Run a verification campaign")
    verify.add_argument("--dims", default=None, help="Comma-separated dimensions, e.g. 2,3,4")
    verify.add_argument("--trials", type=int, default=None, help="Trials per dimension")
    verify.add_argument("--alphas", default=None, help="Alpha grid as start:stop:step or a comma list")
    verify.add_argument("--seed", type=int, default=None, help="Master seed (64-bit unsigned)")
    _add_tolerance_flags(verify)
    verify.add_argument("--format", choices=["json", "csv"], default=None, help="Report format")
    verify.add_argument("--out", default=None, help="Report path (stdout when omitted)")
    verify.add_argument("--checks", default=None, help="Comma-separated inequality ids")
    verify.add_argument("--ensembles", default=None, help="Comma-separated ensembles, e.g. gram,gram:2,density")
    verify.add_argument("--norms", default=None, help="Comma-separated norms, e.g. operator,trace,kyfan:*,schatten:3")
    verify.add_argument("--competitor-draws", type=int, default=None, help="Dominated competitors per dominated trial")
    verify.add_argument("--timing", action="store_true", default=None, help="Add wall time to the report")

    replay_parser = sub.add_parser("replay", help="Re-run one trial from a descriptor")
    replay_parser.add_argument(
        "descriptor", help="Descriptor JSON file, '-' for stdin, or an inline JSON object"
    )
    replay_parser.add_argument("--norms", default=None, help="Comma-separated norms (default from config)")

    chernoff = sub.add_parser("chernoff", help="Minimize Tr(A^alpha B^(1-alpha)) over alpha")
    chernoff.add_argument("a", help="Matrix file for A")
    chernoff.add_argument("b", help="Matrix file for B")
    chernoff.add_argument("--json", action="store_true", help="Print a JSON object")
    _add_tolerance_flags(chernoff)

    minpair = sub.add_parser("minpair", help="Common lower bound S <= A, S <= B")
    minpair.add_argument("a", help="Matrix file for A")
    minpair.add_argument("b", help="Matrix file for B")
    minpair.add_argument("--pivot", choices=["A", "B"], default="B", help="Argument to invert (default B)")
    minpair.add_argument("--out", default=None, help="Output matrix file (stdout when omitted)")
    _add_tolerance_flags(minpair)

    config = sub.add_parser("config", help="Show the resolved configuration")
    config.add_argument("--init", action="store_true", help="Create the user configuration file from defaults")
    config.add_argument("--path", action="store_true", help="Print the user configuration path only")

    return parser


def _tolerance(args: argparse.Namespace, manager: ConfigManager) -> ToleranceModel:
    rel = args.tol_rel if args.tol_rel is not None else manager.get("tolerances.rel", 1e-8)
    abs_ = args.tol_abs if args.tol_abs is not None else manager.get("tolerances.abs", 1e-12)
    try:
        return ToleranceModel(rel=rel, abs=abs_)
    except ValueError as e:
        raise ConfigError(f"Invalid tolerances: {e}") from e


def _progress(done: int, total: int) -> None:
    if done == total or done % max(1, total // 20) == 0:
        logger.info(f"verify: {done}/{total} trials")


def cmd_verify(args: argparse.Namespace, manager: ConfigManager) -> int:
    overrides: Dict[str, Any] = {
        "dims": args.dims,
        "trials_per_dim": args.trials,
        "alpha_grid": args.alphas,
        "master_seed": args.seed,
        "tol_rel": args.tol_rel,
        "tol_abs": args.tol_abs,
        "format": args.format,
        "output_path": args.out,
        "checks": args.checks,
        "ensembles": args.ensembles,
        "norms": args.norms,
        "competitor_draws": args.competitor_draws,
        "include_timing": args.timing,
    }
    config = TrialConfig.from_manager(manager, overrides)
    report = run_suite(config, progress=_progress)
    write_report(report, config.output_path, config.format)

    summary = f"{report.total} checks, {report.failed} failed, min slack {report.min_slack}"
    if report.failed:
        worst = report.worst_cell()
        logger.error(f"verify: {summary}; failures by ensemble {report.failed_by_ensemble}")
        if worst is not None and worst.argmin is not None:
            print(f"Worst cell descriptor: {json.dumps(worst.argmin.to_dict(), sort_keys=True)}", file=sys.stderr)
        return EXIT_VIOLATION
    logger.info(f"verify: {summary}")
    return EXIT_OK


def _read_descriptor(source: str) -> TrialDescriptor:
    if source == "-":
        return TrialDescriptor.from_json(sys.stdin.read())
    if source.lstrip().startswith("{"):
        return TrialDescriptor.from_json(source)
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ReportIOError(f"Cannot read descriptor {path}: {e}") from e
    return TrialDescriptor.from_json(text)


def _norms(value: Optional[str], manager: ConfigManager) -> List[NormSpec]:
    names = value.split(",") if value else manager.get("campaign.norms", [])
    return [NormSpec.parse(name) for name in names if str(name).strip()]


def cmd_replay(args: argparse.Namespace, manager: ConfigManager) -> int:
    descriptor = _read_descriptor(args.descriptor)
    result = replay(
        descriptor,
        norms=_norms(args.norms, manager),
        min_condition_ratio=float(manager.get("projection.min_condition_ratio", 1e-3)),
    )
    if result.target is not None and not result.target.passed:
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_chernoff(args: argparse.Namespace, manager: ConfigManager) -> int:
    tol = _tolerance(args, manager)
    a, b = read_matrix(args.a), read_matrix(args.b)
    result = chernoff_exponent(a, b, tol)
    distance = trace_distance(a, b)
    half_trace = sum_minus_abs(a, b).trace() / 2.0
    bound_slack = result.q_value - half_trace

    payload = {
        "alpha_star": result.alpha_star,
        "q_value": result.q_value,
        "exponent": finite_or_none(result.exponent),
        "trace_distance": distance,
        "half_trace_lower_bound": half_trace,
        "bound_slack": bound_slack,
    }
    if args.json:
        sys.stdout.write(canonical_json(payload))
    else:
        print(f"alpha*         {result.alpha_star!r}")
        print(f"Q              {result.q_value!r}")
        print(f"-ln Q          {result.exponent!r}")
        print(f"trace distance {distance!r}")
        print(f"Tr(A+B-|A-B|)/2 <= Q: {half_trace!r} <= {result.q_value!r} (slack {bound_slack!r})")
    return EXIT_OK if bound_slack >= -tol.effective(max(1.0, result.q_value)) else EXIT_VIOLATION


def cmd_minpair(args: argparse.Namespace, manager: ConfigManager) -> int:
    tol = _tolerance(args, manager)
    a, b = read_matrix(args.a), read_matrix(args.b)
    result = parallel_min(a, b, Pivot(args.pivot), tol)
    if result.regularization_epsilon > 0.0:
        logger.warning(
            f"minpair: pivot {args.pivot} is singular; S <= {args.pivot} + {result.regularization_epsilon:.3e} I"
        )
    if args.out:
        write_matrix(result.s, args.out)
    else:
        sys.stdout.write(format_matrix(result.s))
    return EXIT_OK


def cmd_config(args: argparse.Namespace, manager: ConfigManager) -> int:
    if args.init:
        path = manager.ensure_user_config()
        print(f"User configuration: {path}")
        return EXIT_OK
    if args.path:
        print(manager.get_config_path())
        return EXIT_OK
    sys.stdout.write(yaml.safe_dump(manager.as_dict(), default_flow_style=False, sort_keys=False))
    return EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "replay": cmd_replay,
    "chernoff": cmd_chernoff,
    "minpair": cmd_minpair,
    "config": cmd_config,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        manager = ConfigManager()
        if args.config:
            manager.load_file(args.config)
        if args.events_file:
            manager.set("logging.events_file", args.events_file)
        configure_logging(
            level=args.log_level or manager.get("logging.level", "WARNING"),
            log_file=args.log_file or manager.get("logging.file"),
            quiet=args.quiet,
        )
        return COMMANDS[args.command](args, manager)
    except (ConfigError, InvalidInput, NotPSD) as e:
        print(f"powerstormer: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ReportIOError as e:
        print(f"powerstormer: I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    except PowerStormerError as e:
        print(f"powerstormer: numerical failure: {e}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
