"""
Unitarily invariant norms and weak majorization.

Every norm is a symmetric gauge function of the singular values, so there is
one code path: ``singular_values`` then the gauge.
"""

import re
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence

import numpy as np

from powerstormer.decomp import singular_values
from powerstormer.exceptions import InvalidInput, ShapeError
from powerstormer.linalg import HermitianMatrix
from powerstormer.tolerance import DEFAULT_TOLERANCE, ToleranceModel


class NormKind(str, Enum):
    OPERATOR = "Operator"
    TRACE = "Trace"
    FROBENIUS = "Frobenius"
    KY_FAN = "KyFan"
    SCHATTEN = "Schatten"


_SPEC_PATTERN = re.compile(r"^\s*([A-Za-z_]+)\s*(?:[:(]\s*([^)\s]+)\s*\)?)?\s*$")

_KIND_ALIASES = {
    "operator": NormKind.OPERATOR,
    "op": NormKind.OPERATOR,
    "spectral": NormKind.OPERATOR,
    "trace": NormKind.TRACE,
    "nuclear": NormKind.TRACE,
    "frobenius": NormKind.FROBENIUS,
    "fro": NormKind.FROBENIUS,
    "kyfan": NormKind.KY_FAN,
    "ky_fan": NormKind.KY_FAN,
    "schatten": NormKind.SCHATTEN,
}


@dataclass(frozen=True)
class NormSpec:
    """A unitarily invariant norm.

    ``param`` is ``k`` for Ky Fan (``None`` means "every k" and is expanded
    per dimension with ``expand``) and ``p >= 1`` for Schatten.
    """

    kind: NormKind
    param: Optional[float] = None

    def __post_init__(self) -> None:
        if self.kind is NormKind.SCHATTEN:
            if self.param is None or not np.isfinite(self.param) or self.param < 1.0:
                raise InvalidInput(f"Schatten p must be a finite real >= 1, got {self.param}")
        elif self.kind is NormKind.KY_FAN:
            if self.param is not None and (self.param != int(self.param) or self.param < 1):
                raise InvalidInput(f"Ky Fan k must be a positive integer, got {self.param}")
        elif self.param is not None:
            raise InvalidInput(f"{self.kind.value} norm takes no parameter")

    @classmethod
    def operator(cls) -> "NormSpec":
        return cls(NormKind.OPERATOR)

    @classmethod
    def trace(cls) -> "NormSpec":
        return cls(NormKind.TRACE)

    @classmethod
    def frobenius(cls) -> "NormSpec":
        return cls(NormKind.FROBENIUS)

    @classmethod
    def ky_fan(cls, k: Optional[int] = None) -> "NormSpec":
        return cls(NormKind.KY_FAN, None if k is None else int(k))

    @classmethod
    def schatten(cls, p: float) -> "NormSpec":
        return cls(NormKind.SCHATTEN, float(p))

    @classmethod
    def parse(cls, text: str) -> "NormSpec":
        """Parse ``operator``, ``trace``, ``fro``, ``kyfan:2``, ``KyFan(*)``, ``schatten:3``."""
        match = _SPEC_PATTERN.match(str(text))
        if not match:
            raise InvalidInput(f"Unrecognized norm spec: {text!r}")
        name, arg = match.group(1).lower(), match.group(2)
        kind = _KIND_ALIASES.get(name)
        if kind is None:
            raise InvalidInput(f"Unrecognized norm kind: {match.group(1)!r}")

        if kind is NormKind.KY_FAN:
            if arg is None or arg in ("*", "all"):
                return cls.ky_fan()
            try:
                return cls.ky_fan(int(arg))
            except ValueError as e:
                raise InvalidInput(f"Ky Fan k must be an integer, got {arg!r}") from e
        if kind is NormKind.SCHATTEN:
            if arg is None:
                raise InvalidInput("Schatten norm needs p, e.g. 'schatten:3'")
            try:
                return cls.schatten(float(arg))
            except ValueError as e:
                raise InvalidInput(f"Schatten p must be a number, got {arg!r}") from e
        if arg is not None:
            raise InvalidInput(f"{kind.value} norm takes no parameter, got {arg!r}")
        return cls(kind)

    @property
    def label(self) -> str:
        if self.kind is NormKind.KY_FAN:
            return f"KyFan({'*' if self.param is None else int(self.param)})"
        if self.kind is NormKind.SCHATTEN:
            return f"Schatten({self.param:g})"
        return self.kind.value

    def expand(self, dim: int) -> List["NormSpec"]:
        """Concrete specs at dimension ``dim`` (``KyFan(*)`` becomes k = 1..dim)."""
        if self.kind is NormKind.KY_FAN and self.param is None:
            return [NormSpec.ky_fan(k) for k in range(1, dim + 1)]
        return [self]

    def gauge(self, values: np.ndarray) -> float:
        """Evaluate the norm on a vector of singular values (any order)."""
        s = np.sort(np.abs(np.asarray(values, dtype=np.float64)))[::-1]
        if self.kind is NormKind.OPERATOR:
            return float(s[0]) if s.size else 0.0
        if self.kind is NormKind.TRACE:
            return float(np.sum(s))
        if self.kind is NormKind.FROBENIUS:
            return float(np.sqrt(np.sum(s * s)))
        if self.kind is NormKind.KY_FAN:
            if self.param is None:
                raise InvalidInput("KyFan(*) must be expanded to a concrete k before evaluation")
            k = int(self.param)
            if k > s.size:
                raise InvalidInput(f"Ky Fan k={k} exceeds dimension {s.size}")
            return float(np.sum(s[:k]))
        p = float(self.param)
        top = float(s[0]) if s.size else 0.0
        if top == 0.0:
            return 0.0
        # Scale by the largest value so s^p cannot overflow
        return top * float(np.sum((s / top) ** p) ** (1.0 / p))

    def __str__(self) -> str:
        return self.label


DEFAULT_NORMS: List[NormSpec] = [
    NormSpec.operator(),
    NormSpec.trace(),
    NormSpec.ky_fan(),
    NormSpec.schatten(3),
]


def norm(a: HermitianMatrix, spec: NormSpec) -> float:
    """Unitarily invariant norm of a Hermitian matrix.

    Raises:
        InvalidInput: Ky Fan ``k`` outside ``[1, dim]``.
    """
    return spec.gauge(singular_values(a))


def expand_norms(specs: Sequence[NormSpec], dim: int) -> List[NormSpec]:
    """Expand ``KyFan(*)`` entries and drop duplicates, keeping order."""
    out: List[NormSpec] = []
    for spec in specs:
        for concrete in spec.expand(dim):
            if concrete.kind is NormKind.KY_FAN and int(concrete.param) > dim:
                raise InvalidInput(f"Ky Fan k={int(concrete.param)} exceeds dimension {dim}")
            if concrete not in out:
                out.append(concrete)
    return out


@dataclass(frozen=True)
class MajorizationResult:
    """Weak majorization verdict with the smallest prefix-sum margin."""

    holds: bool
    margin: float
    margins: np.ndarray
    tolerance: float

    def __bool__(self) -> bool:
        return self.holds


def weakly_majorized(
    x: Sequence[float], y: Sequence[float], tol: ToleranceModel = DEFAULT_TOLERANCE
) -> MajorizationResult:
    """Test ``x <_w y``: every prefix sum of sorted ``x`` is at most that of ``y``.

    Both vectors are re-sorted descending. The comparison allows
    ``max(tol.abs, tol.rel * (1 + sum|y|))``.

    Raises:
        ShapeError: Length mismatch.
    """
    xs = np.sort(np.asarray(x, dtype=np.float64))[::-1]
    ys = np.sort(np.asarray(y, dtype=np.float64))[::-1]
    if xs.shape != ys.shape:
        raise ShapeError(f"Length mismatch: {xs.size} vs {ys.size}")

    margins = np.cumsum(ys) - np.cumsum(xs)
    threshold = tol.effective(1.0 + float(np.sum(np.abs(ys))))
    margin = float(np.min(margins)) if margins.size else 0.0
    return MajorizationResult(
        holds=margin >= -threshold, margin=margin, margins=margins, tolerance=threshold
    )
