"""
Campaign runner.

Trial ``t`` at dimension ``n`` draws its pair from
``ensembles[t mod len(ensembles)]`` with seed ``derive_seed(master, n, t)``
and evaluates every enabled check at every grid alpha. ``ProjectionShift``
runs on ``(A + delta I, B)`` with the smallest ``delta`` that brings
``lambda_min(A) / lambda_max(A)`` up to ``min_condition_ratio``.

Two probes ride along and never affect the verdict: dominated competitors
``T <= A, T <= B`` compared eigenvalue-wise with the clamp construction, and
the weak majorization of ``s(X)`` by the singular values of the non-Hermitian
shifted matrix.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from powerstormer.decomp import Pivot, parallel_min
from powerstormer.harness.config import TrialConfig
from powerstormer.harness.events import log_event
from powerstormer.harness.report import CheckCell, SuiteReport, TrialDescriptor, matrix_hash
from powerstormer.inequalities import (InequalityId, PairAnalysis, ProjectionShiftResult,
                                       SlackReport, lift_to_positive_definite, projection_shift)
from powerstormer.linalg import HermitianMatrix, eig_hermitian
from powerstormer.norms import NormSpec
from powerstormer.randgen import (EnsembleKind, EnsembleSpec, competitor_seeds, derive_seed,
                                  generate_pair, random_dominated)
from powerstormer.tolerance import ToleranceModel

logger = logging.getLogger("PowerStormer.Harness")

ProgressCallback = Callable[[int, int], None]


@dataclass(frozen=True)
class TrialContext:
    """A generated trial: the pair and how it was drawn."""

    dim: int
    trial: int
    ensemble: EnsembleSpec
    seed: int
    a: HermitianMatrix
    b: HermitianMatrix
    hash: str

    def descriptor(
        self,
        tol: ToleranceModel,
        alpha: Optional[float] = None,
        check: Optional[InequalityId] = None,
        norm: str = "",
    ) -> TrialDescriptor:
        return TrialDescriptor(
            dim=self.dim,
            trial=self.trial,
            ensemble=self.ensemble.label,
            seed=self.seed,
            alpha=alpha,
            check=check.value if check is not None else None,
            norm=norm,
            tol_rel=tol.rel,
            tol_abs=tol.abs_,
            hash=self.hash,
        )


def build_trial(dim: int, trial: int, ensemble: EnsembleSpec, master_seed: int) -> TrialContext:
    seed = derive_seed(master_seed, dim, trial)
    a, b = generate_pair(ensemble, dim, seed)
    return TrialContext(
        dim=dim, trial=trial, ensemble=ensemble, seed=seed, a=a, b=b, hash=matrix_hash(a, b)
    )


def ensemble_for_trial(config: TrialConfig, trial: int) -> EnsembleSpec:
    return config.ensembles[trial % len(config.ensembles)]


@dataclass
class TrialOutcome:
    """Reports of one trial plus the projection-shift intermediates by alpha."""

    reports: List[SlackReport]
    analysis: PairAnalysis
    shift_results: List[Tuple[float, ProjectionShiftResult]] = field(default_factory=list)
    lift_delta: float = 0.0


def evaluate_trial(
    a: HermitianMatrix,
    b: HermitianMatrix,
    alphas: Sequence[float],
    checks: Sequence[InequalityId],
    norms: Sequence[NormSpec],
    tol: ToleranceModel,
    min_condition_ratio: float,
) -> TrialOutcome:
    """Evaluate every enabled check at every alpha for one pair."""
    analysis = PairAnalysis(a, b, tol)
    outcome = TrialOutcome(reports=[], analysis=analysis)

    shift_analysis: Optional[PairAnalysis] = None
    if InequalityId.PROJECTION_SHIFT in checks:
        lifted, outcome.lift_delta = lift_to_positive_definite(a, min_condition_ratio)
        shift_analysis = analysis if lifted is a else PairAnalysis(lifted, b, tol)

    for alpha in alphas:
        outcome.reports.extend(analysis.evaluate(alpha, checks, norms))
        if shift_analysis is not None:
            result, report = projection_shift(
                shift_analysis.a, b, alpha, tol, analysis=shift_analysis
            )
            outcome.reports.append(report)
            outcome.shift_results.append((alpha, result))
    return outcome


@dataclass
class GapCounter:
    """Running statistics of ``lambda_i(T) - lambda_i(S)`` for one competitor family.

    Only the extremes, the sum and the number of gaps are kept.
    """

    max_witnesses: int
    count: int = 0
    violations: int = 0
    gap_count: int = 0
    gap_sum: float = 0.0
    gap_min: float = float("inf")
    gap_max: float = float("-inf")
    witnesses: List[Dict[str, Any]] = field(default_factory=list)

    def observe(self, gaps: np.ndarray, threshold: float, witness: Callable[[], Dict[str, Any]]) -> bool:
        gaps = np.asarray(gaps, dtype=np.float64)
        self.count += 1
        self.gap_count += gaps.size
        self.gap_sum += float(np.sum(gaps))
        self.gap_min = min(self.gap_min, float(np.min(gaps)))
        self.gap_max = max(self.gap_max, float(np.max(gaps)))
        violated = bool(np.max(gaps) > threshold)
        if violated:
            self.violations += 1
            if len(self.witnesses) < self.max_witnesses:
                self.witnesses.append(witness())
        return violated

    def summary(self) -> Dict[str, Any]:
        if not self.count:
            return {"count": 0, "violations": 0, "max_gap": None, "distribution": None, "witnesses": []}
        return {
            "count": self.count,
            "violations": self.violations,
            "max_gap": self.gap_max,
            "distribution": {
                "min": self.gap_min,
                "max": self.gap_max,
                "mean": self.gap_sum / self.gap_count,
                "gaps": self.gap_count,
            },
            "witnesses": self.witnesses,
        }



class CompetitorProbe:
    """Compares dominated competitors ``T`` with the clamp construction ``S``.

    Random competitors and the half-sum competitor ``X / 2`` are counted
    separately.
    """

    def __init__(self, draws: int, max_witnesses: int) -> None:
        self.draws = draws
        self.random = GapCounter(max_witnesses)
        self.half_sum = GapCounter(max_witnesses)

    def run(self, ctx: TrialContext, analysis: PairAnalysis, tol: ToleranceModel) -> None:
        s_values = eig_hermitian(parallel_min(ctx.a, ctx.b, Pivot.B, tol).s).eigenvalues
        threshold = tol.effective(analysis.scale)

        def witness(competitor: Any, gaps: np.ndarray) -> Callable[[], Dict[str, Any]]:
            return lambda: {
                "descriptor": ctx.descriptor(tol).to_dict(),
                "competitor": competitor,
                "max_gap": float(np.max(gaps)),
            }

        for j, seed in enumerate(competitor_seeds(ctx.seed, self.draws)):
            t = random_dominated(ctx.a, ctx.b, seed, tol)
            gaps = eig_hermitian(t).eigenvalues - s_values
            if self.random.observe(gaps, threshold, witness(j, gaps)):
                log_event("competitor.violation", witness(j, gaps)(), level="INFO")

        gaps = eig_hermitian(0.5 * analysis.x).eigenvalues - s_values
        if self.half_sum.observe(gaps, threshold, witness("half_sum", gaps)):
            log_event("competitor.violation", witness("half_sum", gaps)(), level="INFO")

    def summary(self) -> Dict[str, Any]:
        return {"random": self.random.summary(), "half_sum": self.half_sum.summary()}


class ShiftProbe:
    """Weak majorization of ``s(X)`` by the singular values of the shifted matrix."""

    def __init__(self, max_witnesses: int) -> None:
        self.max_witnesses = max_witnesses
        self.count = 0
        self.exceptions = 0
        self.worst_margin = float("inf")
        self.min_beta = float("inf")
        self.max_trace_gap = 0.0
        self.lifted_trials = 0
        self.witnesses: List[Dict[str, Any]] = []

    def observe_trial(self, ctx: TrialContext, outcome: TrialOutcome, tol: ToleranceModel) -> None:
        if not outcome.shift_results:
            return
        if outcome.lift_delta > 0.0:
            self.lifted_trials += 1
        for alpha, result in outcome.shift_results:
            self.count += 1
            majorization = result.shift_majorization
            self.worst_margin = min(self.worst_margin, majorization.margin)
            self.min_beta = min(self.min_beta, result.beta)
            self.max_trace_gap = max(self.max_trace_gap, abs(result.trace_gap))
            if not majorization.holds:
                self.exceptions += 1
                witness = {
                    "descriptor": ctx.descriptor(tol, alpha, InequalityId.PROJECTION_SHIFT).to_dict(),
                    "margin": majorization.margin,
                    "beta": result.beta,
                }
                if len(self.witnesses) < self.max_witnesses:
                    self.witnesses.append(witness)
                log_event("shift.exception", witness, level="INFO")

    def summary(self) -> Dict[str, Any]:
        seen = self.count > 0
        return {
            "count": self.count,
            "exceptions": self.exceptions,
            "worst_margin": self.worst_margin if seen else None,
            "min_beta": self.min_beta if seen else None,
            "max_trace_gap": self.max_trace_gap if seen else None,
            "lifted_trials": self.lifted_trials,
            "witnesses": self.witnesses,
        }


def run_suite(config: TrialConfig, progress: Optional[ProgressCallback] = None) -> SuiteReport:
    """Run a campaign and aggregate its reports.

    Deterministic given the configuration: the canonical report bytes do not
    depend on wall-clock time unless ``include_timing`` is set.
    """
    started = time.perf_counter()
    tol = config.tolerances
    log_event("suite.start", config.echo())

    cells: Dict[Tuple[Any, ...], CheckCell] = {}
    competitors = CompetitorProbe(config.competitor_draws, config.max_witnesses)
    shift = ShiftProbe(config.max_witnesses)
    total_trials = len(config.dims) * config.trials_per_dim
    done = 0

    for dim in config.dims:
        for trial in range(config.trials_per_dim):
            ctx = build_trial(dim, trial, ensemble_for_trial(config, trial), config.master_seed)
            outcome = evaluate_trial(
                ctx.a,
                ctx.b,
                config.alpha_grid,
                config.checks,
                config.norms,
                tol,
                config.min_condition_ratio,
            )

            for report in outcome.reports:
                key = (report.inequality_id, report.alpha, report.norm_label, dim, ctx.ensemble.label)
                cell = cells.get(key)
                if cell is None:
                    cell = cells[key] = CheckCell(
                        inequality_id=report.inequality_id,
                        alpha=report.alpha,
                        norm=report.norm_label,
                        dim=dim,
                        ensemble=ctx.ensemble.label,
                    )
                describe = _describer(ctx, tol, report)
                cell.add(report, describe)
                if not report.passed:
                    log_event(
                        "trial.violation",
                        {"descriptor": describe().to_dict(), "worst_slack": report.worst_slack},
                        level="WARNING",
                    )

            shift.observe_trial(ctx, outcome, tol)
            if ctx.ensemble.kind is EnsembleKind.DOMINATED:
                competitors.run(ctx, outcome.analysis, tol)

            done += 1
            if progress is not None:
                progress(done, total_trials)

    elapsed = time.perf_counter() - started
    report = SuiteReport(
        config=config.echo(),
        cells=list(cells.values()),
        competitor_probe=competitors.summary(),
        shift_probe=shift.summary(),
        wall_time_s=elapsed if config.include_timing else None,
    )
    log_event(
        "suite.finish",
        {"total": report.total, "failed": report.failed, "min_slack": report.min_slack, "wall_time_s": elapsed},
        level="WARNING" if report.failed else "INFO",
    )
    logger.debug(f"run_suite: {report.total} cells evaluated, {report.failed} failed, {elapsed:.2f}s")
    return report


def _describer(ctx: TrialContext, tol: ToleranceModel, report: SlackReport) -> Callable[[], TrialDescriptor]:
    return lambda: ctx.descriptor(tol, report.alpha, report.inequality_id, report.norm_label)
