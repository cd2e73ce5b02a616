"""Verification campaigns: configuration, runner, reports and replay."""

from powerstormer.harness.config import ReportFormat, TrialConfig, parse_alpha_grid
from powerstormer.harness.events import log_event
from powerstormer.harness.replay import ReplayResult, replay
from powerstormer.harness.report import (CheckCell, SuiteReport, TrialDescriptor, matrix_hash,
                                         render_csv, render_json, render_report, write_report)
from powerstormer.harness.runner import (TrialContext, TrialOutcome, build_trial,
                                         evaluate_trial, run_suite)

__all__ = [
    "ReportFormat",
    "TrialConfig",
    "parse_alpha_grid",
    "log_event",
    "replay",
    "ReplayResult",
    "CheckCell",
    "SuiteReport",
    "TrialDescriptor",
    "matrix_hash",
    "render_csv",
    "render_json",
    "render_report",
    "write_report",
    "TrialContext",
    "TrialOutcome",
    "build_trial",
    "evaluate_trial",
    "run_suite",
]
