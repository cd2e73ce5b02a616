"""Validated campaign configuration."""

import math
from enum import Enum
from typing import Any, Dict, List, Mapping, Optional, Sequence, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from powerstormer.config import ConfigManager
from powerstormer.exceptions import ConfigError, InvalidInput
from powerstormer.inequalities.report import ALL_CHECKS, InequalityId
from powerstormer.norms import DEFAULT_NORMS, NormKind, NormSpec
from powerstormer.randgen import DEFAULT_ENSEMBLES, SEED_MASK, EnsembleSpec
from powerstormer.tolerance import ToleranceModel

HARNESS_TOLERANCE = ToleranceModel(rel=1e-8, abs=1e-12)
DEFAULT_ALPHA_GRID = [round(0.1 * i, 12) for i in range(11)]


class ReportFormat(str, Enum):
    JSON = "json"
    CSV = "csv"


def parse_alpha_grid(value: Union[str, Sequence[float]]) -> List[float]:
    """Parse ``start:stop:step`` (inclusive) or a comma list into a grid.

    Raises:
        InvalidInput: Malformed text or non-positive step.
    """
    if not isinstance(value, str):
        return [float(v) for v in value]
    text = value.strip()
    if not text:
        return []
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise InvalidInput(f"Alpha range must be start:stop:step, got {value!r}")
        try:
            start, stop, step = (float(p) for p in parts)
        except ValueError as e:
            raise InvalidInput(f"Alpha range must be numeric, got {value!r}") from e
        if not step > 0.0:
            raise InvalidInput(f"Alpha step must be positive, got {step}")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [round(start + i * step, 12) for i in range(max(count, 0))]
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError as e:
        raise InvalidInput(f"Alpha list must be numeric, got {value!r}") from e


def parse_int_list(value: Union[str, Sequence[int]]) -> List[int]:
    if not isinstance(value, str):
        return [int(v) for v in value]
    try:
        return [int(p) for p in value.split(",") if p.strip()]
    except ValueError as e:
        raise InvalidInput(f"Expected a comma-separated list of integers, got {value!r}") from e


def _split_names(value: Union[str, Sequence[Any]]) -> List[Any]:
    if isinstance(value, str):
        return [p.strip() for p in value.split(",") if p.strip()]
    return list(value)


class TrialConfig(BaseModel):
    """One verification campaign.

    Counts in the report are exactly
    ``|dims| * trials_per_dim * |alpha_grid| * sum(1 or |norms at dim|)``.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    dims: List[int] = Field(default_factory=lambda: [2, 3, 4, 6, 8], min_length=1)
    trials_per_dim: int = Field(default=200, ge=1)
    alpha_grid: List[float] = Field(default_factory=lambda: list(DEFAULT_ALPHA_GRID), min_length=1)
    ensembles: List[EnsembleSpec] = Field(default_factory=lambda: list(DEFAULT_ENSEMBLES), min_length=1)
    norms: List[NormSpec] = Field(default_factory=lambda: list(DEFAULT_NORMS))
    master_seed: int = Field(default=20240101, ge=0, le=SEED_MASK)
    tolerances: ToleranceModel = HARNESS_TOLERANCE
    checks: List[InequalityId] = Field(default_factory=lambda: list(ALL_CHECKS), min_length=1)
    output_path: Optional[str] = None
    format: ReportFormat = ReportFormat.JSON
    competitor_draws: int = Field(default=1, ge=0)
    min_condition_ratio: float = Field(default=1e-3, gt=0.0, lt=1.0)
    max_witnesses: int = Field(default=5, ge=0)
    include_timing: bool = False

    @field_validator("dims")
    @classmethod
    def _check_dims(cls, dims: List[int]) -> List[int]:
        if any(d < 1 for d in dims):
            raise ValueError(f"dims must all be >= 1, got {dims}")
        return dims

    @field_validator("alpha_grid", mode="before")
    @classmethod
    def _parse_alphas(cls, value: Any) -> Any:
        try:
            return parse_alpha_grid(value)
        except InvalidInput as e:
            raise ValueError(str(e)) from e

    @field_validator("alpha_grid")
    @classmethod
    def _check_alphas(cls, grid: List[float]) -> List[float]:
        for alpha in grid:
            if not math.isfinite(alpha) or alpha < 0.0 or alpha > 1.0:
                raise ValueError(f"alpha values must lie in [0, 1], got {alpha}")
        return grid

    @field_validator("ensembles", mode="before")
    @classmethod
    def _parse_ensembles(cls, value: Any) -> Any:
        try:
            return [v if isinstance(v, EnsembleSpec) else EnsembleSpec.parse(v) for v in _split_names(value)]
        except InvalidInput as e:
            raise ValueError(str(e)) from e

    @field_validator("norms", mode="before")
    @classmethod
    def _parse_norms(cls, value: Any) -> Any:
        try:
            return [v if isinstance(v, NormSpec) else NormSpec.parse(v) for v in _split_names(value)]
        except InvalidInput as e:
            raise ValueError(str(e)) from e

    @field_validator("checks", mode="before")
    @classmethod
    def _parse_checks(cls, value: Any) -> Any:
        return [v if isinstance(v, InequalityId) else InequalityId.parse(v) for v in _split_names(value)]

    @field_validator("dims", mode="before")
    @classmethod
    def _parse_dims(cls, value: Any) -> Any:
        try:
            return parse_int_list(value)
        except InvalidInput as e:
            raise ValueError(str(e)) from e

    @model_validator(mode="after")
    def _check_cross_fields(self) -> "TrialConfig":
        smallest = min(self.dims)
        for spec in self.norms:
            if spec.kind is NormKind.KY_FAN and spec.param is not None and int(spec.param) > smallest:
                raise ValueError(f"{spec.label} exceeds the smallest dimension {smallest}")
        if self.min_condition_ratio <= self.tolerances.rel:
            raise ValueError(
                f"min_condition_ratio ({self.min_condition_ratio}) must exceed tolerances.rel "
                f"({self.tolerances.rel})"
            )
        return self

    @classmethod
    def build(cls, **fields: Any) -> "TrialConfig":
        """Construct, converting validation failures to ``ConfigError``."""
        try:
            return cls(**fields)
        except ValidationError as e:
            details = "; ".join(
                f"{'.'.join(str(p) for p in err['loc']) or 'config'}: {err['msg']}" for err in e.errors()
            )
            raise ConfigError(f"Invalid campaign configuration: {details}") from e

    @classmethod
    def from_manager(
        cls, manager: Optional[ConfigManager] = None, overrides: Optional[Mapping[str, Any]] = None
    ) -> "TrialConfig":
        """Resolve the layered configuration plus command-line ``overrides``.

        ``overrides`` uses field names; ``None`` values are ignored.
        """
        manager = manager or ConfigManager()
        fields: Dict[str, Any] = {
            "dims": manager.get("campaign.dims"),
            "trials_per_dim": manager.get("campaign.trials_per_dim"),
            "alpha_grid": manager.get("campaign.alpha_grid"),
            "ensembles": manager.get("campaign.ensembles"),
            "norms": manager.get("campaign.norms"),
            "checks": manager.get("campaign.checks"),
            "master_seed": manager.get("campaign.master_seed"),
            "include_timing": manager.get("campaign.include_timing"),
            "competitor_draws": manager.get("competitor_probe.draws"),
            "max_witnesses": manager.get("competitor_probe.max_witnesses"),
            "min_condition_ratio": manager.get("projection.min_condition_ratio"),
            "output_path": manager.get("output.path"),
            "format": manager.get("output.format"),
        }
        rel, abs_ = manager.get("tolerances.rel"), manager.get("tolerances.abs")
        fields = {k: v for k, v in fields.items() if v is not None}

        overrides = dict(overrides or {})
        override_rel, override_abs = overrides.pop("tol_rel", None), overrides.pop("tol_abs", None)
        rel = rel if override_rel is None else override_rel
        abs_ = abs_ if override_abs is None else override_abs
        fields.update({k: v for k, v in overrides.items() if v is not None})

        try:
            fields["tolerances"] = ToleranceModel(
                rel=HARNESS_TOLERANCE.rel if rel is None else rel,
                abs=HARNESS_TOLERANCE.abs_ if abs_ is None else abs_,
            )
        except ValidationError as e:
            raise ConfigError(f"Invalid tolerances: {e.errors()[0]['msg']}") from e
        return cls.build(**fields)

    def echo(self) -> Dict[str, Any]:
        """Configuration as echoed in reports (output location excluded)."""
        return {
            "dims": list(self.dims),
            "trials_per_dim": self.trials_per_dim,
            "alpha_grid": list(self.alpha_grid),
            "ensembles": [e.label for e in self.ensembles],
            "norms": [n.label for n in self.norms],
            "checks": [c.value for c in self.checks],
            "master_seed": self.master_seed,
            "tolerances": self.tolerances.to_dict(),
            "competitor_draws": self.competitor_draws,
            "min_condition_ratio": self.min_condition_ratio,
        }
