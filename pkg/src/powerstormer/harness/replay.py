"""Re-run a single trial from its descriptor and print everything about it."""

import logging
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence, TextIO

from powerstormer.decomp import ParallelMinResult, Pivot, parallel_min
from powerstormer.exceptions import InvalidInput
from powerstormer.harness.config import DEFAULT_ALPHA_GRID
from powerstormer.harness.report import TrialDescriptor, matrix_hash
from powerstormer.harness.runner import TrialContext, TrialOutcome, evaluate_trial
from powerstormer.inequalities import ALL_CHECKS, InequalityId, SlackReport
from powerstormer.matrix_io import format_matrix
from powerstormer.norms import DEFAULT_NORMS, NormSpec
from powerstormer.randgen import EnsembleSpec, generate_pair
from powerstormer.tolerance import ToleranceModel

logger = logging.getLogger("PowerStormer.Replay")


@dataclass
class ReplayResult:
    context: TrialContext
    outcome: TrialOutcome
    hash_matches: bool
    pivots: List[ParallelMinResult]
    target: Optional[SlackReport]

    @property
    def reports(self) -> List[SlackReport]:
        return self.outcome.reports


def _fmt(value: float) -> str:
    return repr(float(value))


def replay(
    descriptor: TrialDescriptor,
    norms: Sequence[NormSpec] = DEFAULT_NORMS,
    min_condition_ratio: float = 1e-3,
    stream: Optional[TextIO] = None,
) -> ReplayResult:
    """Regenerate the trial, re-run every check and print matrices and slacks.

    Alphas: the descriptor's alpha, or the default 11-point grid when absent.
    A hash mismatch (tampered seed or ensemble) is logged and printed, not raised.

    Raises:
        InvalidInput: Unknown ensemble or norm in the descriptor.
    """
    out = stream if stream is not None else sys.stdout
    ensemble = EnsembleSpec.parse(descriptor.ensemble)
    tol = ToleranceModel(rel=descriptor.tol_rel, abs=descriptor.tol_abs)

    a, b = generate_pair(ensemble, descriptor.dim, descriptor.seed)
    digest = matrix_hash(a, b)
    ctx = TrialContext(
        dim=descriptor.dim,
        trial=descriptor.trial,
        ensemble=ensemble,
        seed=descriptor.seed,
        a=a,
        b=b,
        hash=digest,
    )
    hash_matches = digest == descriptor.hash
    if not hash_matches:
        logger.warning(
            f"Replay hash mismatch for trial {descriptor.trial} (dim {descriptor.dim}): "
            f"expected {descriptor.hash[:16]}..., got {digest[:16]}..."
        )

    norm_specs = list(norms)
    if descriptor.norm:
        extra = NormSpec.parse(descriptor.norm)
        if extra not in norm_specs:
            norm_specs.append(extra)

    alphas = [descriptor.alpha] if descriptor.alpha is not None else list(DEFAULT_ALPHA_GRID)
    outcome = evaluate_trial(a, b, alphas, ALL_CHECKS, norm_specs, tol, min_condition_ratio)
    pivots = [parallel_min(a, b, pivot, tol) for pivot in (Pivot.B, Pivot.A)]

    target = None
    if descriptor.check is not None:
        try:
            check = InequalityId.parse(descriptor.check)
        except ValueError as e:
            raise InvalidInput(str(e)) from e
        for report in outcome.reports:
            if (
                report.inequality_id is check
                and report.norm_label == descriptor.norm
                and (descriptor.alpha is None or report.alpha == descriptor.alpha)
            ):
                target = report
                break

    _print_replay(out, descriptor, ctx, hash_matches, outcome, pivots, target)
    return ReplayResult(
        context=ctx, outcome=outcome, hash_matches=hash_matches, pivots=pivots, target=target
    )


def _print_replay(
    out: TextIO,
    descriptor: TrialDescriptor,
    ctx: TrialContext,
    hash_matches: bool,
    outcome: TrialOutcome,
    pivots: List[ParallelMinResult],
    target: Optional[SlackReport],
) -> None:
    print(
        f"Trial {ctx.trial} dim={ctx.dim} ensemble={ctx.ensemble.label} seed={ctx.seed}",
        file=out,
    )
    print(f"hash {ctx.hash}", file=out)
    if not hash_matches:
        print(f"WARNING: matrix hash mismatch (descriptor has {descriptor.hash})", file=out)

    print("\nA =", file=out)
    out.write(format_matrix(ctx.a))
    print("B =", file=out)
    out.write(format_matrix(ctx.b))

    print("\nSlack reports:", file=out)
    for report in outcome.reports:
        label = f" [{report.norm_label}]" if report.norm_label else ""
        slacks = " ".join(_fmt(s) for s in report.slacks)
        verdict = "pass" if report.passed else "FAIL"
        print(
            f"  {report.inequality_id.value}{label} alpha={_fmt(report.alpha)} "
            f"worst={_fmt(report.worst_slack)} {verdict}",
            file=out,
        )
        print(f"    slacks: {slacks}", file=out)
    if outcome.lift_delta > 0.0:
        print(f"  (ProjectionShift evaluated on A + {_fmt(outcome.lift_delta)} I)", file=out)

    for result in pivots:
        print(
            f"\nparallel_min pivot={result.pivot.value} eps={_fmt(result.regularization_epsilon)}"
            f" repair={_fmt(result.repair_norm)}",
            file=out,
        )
        print(f"  clamp values: {' '.join(_fmt(t) for t in result.clamp_values)}", file=out)
        out.write(format_matrix(result.s))

    if target is not None:
        print(
            f"\nTarget {target.inequality_id.value}"
            f"{' [' + target.norm_label + ']' if target.norm_label else ''} "
            f"alpha={_fmt(target.alpha)} worst_slack={_fmt(target.worst_slack)}",
            file=out,
        )
    elif descriptor.check is not None:
        print(f"\nTarget {descriptor.check} not found among replayed reports", file=out)
    out.flush()
