"""Tolerance model shared by every comparison in the library."""

from pydantic import BaseModel, ConfigDict, Field


class ToleranceModel(BaseModel):
    """Relative tolerance with an absolute floor.

    The effective tolerance for a comparison at scale ``s`` is
    ``max(abs, rel * s)``; each operation states which scale it uses.
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    rel: float = Field(default=1e-9, gt=0.0)
    abs_: float = Field(default=1e-12, gt=0.0, alias="abs")

    def effective(self, scale: float) -> float:
        """Effective tolerance at the given scale."""
        return max(self.abs_, self.rel * abs(float(scale)))

    def to_dict(self) -> dict:
        return {"rel": self.rel, "abs": self.abs_}


DEFAULT_TOLERANCE = ToleranceModel()
