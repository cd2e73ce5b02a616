"""
Campaign reports: aggregate cells, trial descriptors, JSON and CSV writers.

The canonical JSON body is a pure function of the configuration; wall time
is only added under ``run`` when timing is requested.
"""

import csv
import hashlib
import io
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from powerstormer.exceptions import InvalidInput, ReportIOError
from powerstormer.harness.config import ReportFormat
from powerstormer.inequalities.report import InequalityId, SlackReport
from powerstormer.linalg import HermitianMatrix
from powerstormer.randgen import SEED_MASK
from powerstormer.utils.serialization import canonical_json, finite_or_none

logger = logging.getLogger("PowerStormer.Report")

CSV_COLUMNS = [
    "id",
    "alpha",
    "norm",
    "dim",
    "ensemble",
    "count",
    "pass_count",
    "worst_slack",
    "passed",
    "seed",
    "trial",
]


def matrix_hash(a: HermitianMatrix, b: HermitianMatrix) -> str:
    """SHA-256 over the little-endian complex128 bytes of ``A`` then ``B``."""
    digest = hashlib.sha256()
    for m in (a, b):
        digest.update(np.ascontiguousarray(m.entries, dtype="<c16").tobytes())
    return digest.hexdigest()


class TrialDescriptor(BaseModel):
    """Everything needed to regenerate one trial and one report cell."""

    model_config = ConfigDict(frozen=True)

    dim: int = Field(ge=1)
    trial: int = Field(ge=0)
    ensemble: str
    seed: int = Field(ge=0, le=SEED_MASK)
    alpha: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    check: Optional[str] = None
    norm: str = ""
    tol_rel: float = Field(gt=0.0)
    tol_abs: float = Field(gt=0.0)
    hash: str

    @classmethod
    def from_json(cls, text: str) -> "TrialDescriptor":
        """Parse a descriptor.

        Raises:
            InvalidInput: Not JSON, or missing/invalid fields.
        """
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise InvalidInput(f"Descriptor is not valid JSON: {e}") from e
        if isinstance(data, dict) and "argmin" in data:
            data = data["argmin"]
        if not isinstance(data, dict):
            raise InvalidInput("Descriptor must be a JSON object")
        try:
            return cls(**data)
        except (ValidationError, TypeError) as e:
            raise InvalidInput(f"Malformed trial descriptor: {e}") from e

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump()


@dataclass
class CheckCell:
    """Aggregate over every trial sharing (check, alpha, norm, dim, ensemble)."""

    inequality_id: InequalityId
    alpha: float
    norm: str
    dim: int
    ensemble: str
    count: int = 0
    pass_count: int = 0
    worst_slack: float = float("inf")
    argmin: Optional[TrialDescriptor] = None

    @property
    def passed(self) -> bool:
        return self.pass_count == self.count

    def add(self, report: SlackReport, describe: Callable[[], TrialDescriptor]) -> None:
        """Count ``report``; ``describe`` is only called when it becomes the new minimum."""
        self.count += 1
        if report.passed:
            self.pass_count += 1
        if self.argmin is None or report.worst_slack < self.worst_slack:
            self.worst_slack = report.worst_slack
            self.argmin = describe()

    def sort_key(self) -> Tuple[Any, ...]:
        return (self.dim, self.ensemble, self.inequality_id.value, self.norm, self.alpha)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.inequality_id.value,
            "alpha": self.alpha,
            "norm": self.norm,
            "dim": self.dim,
            "ensemble": self.ensemble,
            "seed": self.argmin.seed if self.argmin else None,
            "count": self.count,
            "pass_count": self.pass_count,
            "worst_slack": finite_or_none(self.worst_slack),
            "passed": self.passed,
            "argmin": self.argmin.to_dict() if self.argmin else None,
        }


@dataclass
class SuiteReport:
    """Result of one campaign."""

    config: Dict[str, Any]
    cells: List[CheckCell]
    competitor_probe: Dict[str, Any]
    shift_probe: Dict[str, Any]
    wall_time_s: Optional[float] = None

    @property
    def total(self) -> int:
        return sum(c.count for c in self.cells)

    @property
    def failed(self) -> int:
        return sum(c.count - c.pass_count for c in self.cells)

    @property
    def min_slack(self) -> Optional[float]:
        if not self.cells:
            return None
        return finite_or_none(min(c.worst_slack for c in self.cells))

    @property
    def failed_by_ensemble(self) -> Dict[str, int]:
        """Failed checks per ensemble label; ensembles without failures are omitted."""
        failures: Dict[str, int] = {}
        for c in self.cells:
            if not c.passed:
                failures[c.ensemble] = failures.get(c.ensemble, 0) + c.count - c.pass_count
        return dict(sorted(failures.items()))

    @property
    def passed(self) -> bool:
        return self.failed == 0

    def count_for(self, inequality_id: InequalityId) -> int:
        return sum(c.count for c in self.cells if c.inequality_id is inequality_id)

    def worst_cell(self) -> Optional[CheckCell]:
        if not self.cells:
            return None
        return min(self.cells, key=lambda c: (c.worst_slack, c.sort_key()))

    def to_dict(self) -> Dict[str, Any]:
        body: Dict[str, Any] = {
            "config": self.config,
            "checks": [c.to_dict() for c in sorted(self.cells, key=CheckCell.sort_key)],
            "lemma2_probe": self.competitor_probe,
            "shift_probe": self.shift_probe,
            "summary": {
                "total": self.total,
                "failed": self.failed,
                "failed_by_ensemble": self.failed_by_ensemble,
                "min_slack": self.min_slack,
            },
        }
        if self.wall_time_s is not None:
            body["run"] = {"wall_time_s": self.wall_time_s}
        return body


def render_json(report: SuiteReport) -> str:
    return canonical_json(report.to_dict())


def render_csv(report: SuiteReport) -> str:
    """One row per aggregate cell."""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for cell in sorted(report.cells, key=CheckCell.sort_key):
        writer.writerow(
            {
                "id": cell.inequality_id.value,
                "alpha": repr(cell.alpha),
                "norm": cell.norm,
                "dim": cell.dim,
                "ensemble": cell.ensemble,
                "count": cell.count,
                "pass_count": cell.pass_count,
                "worst_slack": repr(cell.worst_slack),
                "passed": str(cell.passed).lower(),
                "seed": cell.argmin.seed if cell.argmin else "",
                "trial": cell.argmin.trial if cell.argmin else "",
            }
        )
    return buffer.getvalue()


def render_report(report: SuiteReport, fmt: Union[ReportFormat, str] = ReportFormat.JSON) -> str:
    return render_csv(report) if ReportFormat(fmt) is ReportFormat.CSV else render_json(report)


def write_report(
    report: SuiteReport,
    path: Optional[Union[str, Path]],
    fmt: Union[ReportFormat, str] = ReportFormat.JSON,
) -> Optional[Path]:
    """Write the report to ``path`` (stdout when ``None``).

    Raises:
        ReportIOError: The path cannot be written.
    """
    text = render_report(report, fmt)
    if path is None:
        sys.stdout.write(text)
        return None
    path = Path(path)
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as e:
        raise ReportIOError(f"Cannot write report to {path}: {e}") from e
    logger.info(f"Report written to {path}")
    return path
