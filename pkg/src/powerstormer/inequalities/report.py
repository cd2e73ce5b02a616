"""Slack reports: one verdict per (inequality, alpha, norm) cell."""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional, Sequence

import numpy as np

from powerstormer.norms import NormSpec
from powerstormer.tolerance import ToleranceModel


class InequalityId(str, Enum):
    """Identifiers of the checked inequalities.

    ``NORM_CHECKS`` are evaluated once per norm spec; the rest once per alpha.
    """

    EIG_DOMINANCE = "EigDominance"
    TRACE_LOWER = "TraceLower"
    TRACE_UPPER = "TraceUpper"
    PART_PLUS_NORM = "PartPlusNorm"
    PART_MINUS_NORM = "PartMinusNorm"
    OPERATOR_NORM = "OperatorNorm"
    PROJECTION_SHIFT = "ProjectionShift"
    LOEWNER_UPPER = "LoewnerUpper"
    MINUS_PART_SPECTRUM = "MinusPartSpectrum"

    @property
    def is_norm_check(self) -> bool:
        return self in NORM_CHECKS

    @classmethod
    def parse(cls, text: str) -> "InequalityId":
        for member in cls:
            if member.value.lower() == str(text).strip().lower():
                return member
        raise ValueError(f"Unknown inequality id: {text!r}")


NORM_CHECKS = frozenset({InequalityId.PART_PLUS_NORM, InequalityId.PART_MINUS_NORM})

ALL_CHECKS = tuple(InequalityId)


@dataclass(frozen=True)
class SlackReport:
    """Right-hand side minus left-hand side for one inequality.

    ``passed`` holds iff ``worst_slack >= -tolerance`` where
    ``tolerance = max(tol.abs, tol.rel * scale)``.
    """

    inequality_id: InequalityId
    alpha: float
    slacks: np.ndarray
    worst_slack: float
    passed: bool
    scale: float
    tolerance: float
    norm_spec: Optional[NormSpec] = None

    @property
    def norm_label(self) -> str:
        return self.norm_spec.label if self.norm_spec is not None else ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.inequality_id.value,
            "alpha": self.alpha,
            "norm": self.norm_label,
            "slacks": [float(s) for s in self.slacks],
            "worst_slack": self.worst_slack,
            "passed": self.passed,
            "scale": self.scale,
            "tolerance": self.tolerance,
        }


def make_report(
    inequality_id: InequalityId,
    alpha: float,
    slacks: Sequence[float],
    scale: float,
    tol: ToleranceModel,
    norm_spec: Optional[NormSpec] = None,
) -> SlackReport:
    values = np.atleast_1d(np.asarray(slacks, dtype=np.float64))
    values.setflags(write=False)
    worst = float(np.min(values))
    tolerance = tol.effective(scale)
    return SlackReport(
        inequality_id=inequality_id,
        alpha=float(alpha),
        slacks=values,
        worst_slack=worst,
        passed=worst >= -tolerance,
        scale=float(scale),
        tolerance=tolerance,
        norm_spec=norm_spec,
    )
