"""
Spectral functional calculus on Hermitian matrices.

Every ``A^alpha`` and ``|A|`` in the library goes through ``matrix_function``:
decompose once, apply a scalar function to the eigenvalues, recompose.

Fractional powers use the support-projection convention ``0^0 = 0``: for a
positive semidefinite ``A``, ``A^0`` is the orthogonal projector onto the
range of ``A`` rather than the identity. This keeps
``alpha -> Tr(A^alpha B^(1-alpha))`` right-continuous at ``alpha = 0`` when
``A`` is singular.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from powerstormer.exceptions import DomainError, InvalidInput, NotPSD, ShapeError
from powerstormer.linalg.eigen import eig_hermitian
from powerstormer.linalg.hermitian import HermitianMatrix
from powerstormer.tolerance import DEFAULT_TOLERANCE, ToleranceModel

logger = logging.getLogger("PowerStormer.Functions")

# Eigenvalues below this fraction of ||A||_2 are rounding noise of the Jacobi sweeps.
RESOLUTION_RTOL = 1e-13


@dataclass(frozen=True)
class PSDWitness:
    """Outcome of a positive-semidefiniteness test."""

    is_psd: bool
    lambda_min: float
    tolerance: float

    def __bool__(self) -> bool:
        return self.is_psd


def check_alpha(alpha: float) -> float:
    """Validate an exponent in [0, 1]."""
    alpha = float(alpha)
    if not math.isfinite(alpha) or alpha < 0.0 or alpha > 1.0:
        raise InvalidInput(f"alpha must lie in [0, 1], got {alpha}")
    return alpha


def check_same_dim(*matrices: HermitianMatrix) -> int:
    dims = {m.dim for m in matrices}
    if len(dims) != 1:
        raise ShapeError(f"Operands must share one dimension, got {sorted(dims)}")
    return dims.pop()


def matrix_function(a: HermitianMatrix, f: Callable[[float], float]) -> HermitianMatrix:
    """Return ``U diag(f(lambda_i)) U*`` where ``A = U diag(lambda) U*``.

    Raises:
        DomainError: ``f`` raised or returned a non-finite value at some eigenvalue.
    """
    decomposition = eig_hermitian(a)
    values = np.empty(decomposition.dim, dtype=np.float64)
    for i, lam in enumerate(decomposition.eigenvalues):
        try:
            value = float(f(float(lam)))
        except (ArithmeticError, ValueError) as e:
            raise DomainError(f"Function undefined at eigenvalue {lam!r}: {e}", float(lam)) from e
        if not math.isfinite(value):
            raise DomainError(f"Function is not finite at eigenvalue {lam!r}", float(lam))
        values[i] = value
    return decomposition.recompose(values)


def is_psd(a: HermitianMatrix, tol: ToleranceModel = DEFAULT_TOLERANCE) -> PSDWitness:
    """True iff ``lambda_min(A) >= -max(tol.abs, tol.rel * ||A||_2)``."""
    decomposition = eig_hermitian(a)
    threshold = tol.effective(decomposition.spectral_norm)
    return PSDWitness(
        is_psd=decomposition.lambda_min >= -threshold,
        lambda_min=decomposition.lambda_min,
        tolerance=threshold,
    )


def psd_eigenvalues(
    a: HermitianMatrix, tol: ToleranceModel = DEFAULT_TOLERANCE, name: str = "matrix"
) -> np.ndarray:
    """Eigenvalues of a PSD matrix with numerical zeros snapped to exactly 0.

    Negative eigenvalues within ``tol`` (scale ``||A||_2``) become 0. Positive
    eigenvalues are kept unless they sit below ``RESOLUTION_RTOL * ||A||_2``,
    the rounding level of the computed decomposition, so ``A^p`` keeps every
    resolvable direction of the support even for small ``p``.

    Raises:
        NotPSD: Some eigenvalue is below ``-tol``.
    """
    decomposition = eig_hermitian(a)
    threshold = tol.effective(decomposition.spectral_norm)
    if decomposition.lambda_min < -threshold:
        raise NotPSD(decomposition.lambda_min, threshold, name=name)
    values = np.array(decomposition.eigenvalues)
    values[values < RESOLUTION_RTOL * decomposition.spectral_norm] = 0.0
    return values



def matrix_power(
    a: HermitianMatrix, alpha: float, tol: ToleranceModel = DEFAULT_TOLERANCE
) -> HermitianMatrix:
    """Fractional power ``A^alpha`` of a PSD matrix, ``alpha`` in [0, 1].

    ``x^alpha`` for ``x > 0``; ``0^alpha = 0`` including ``alpha = 0``.

    Raises:
        InvalidInput: ``alpha`` outside [0, 1].
        NotPSD: An eigenvalue is below ``-tol`` at scale ``||A||_2``.
    """
    alpha = check_alpha(alpha)
    values = psd_eigenvalues(a, tol)
    positive = values > 0.0
    powered = np.zeros_like(values)
    if alpha == 0.0:
        powered[positive] = 1.0
    else:
        powered[positive] = values[positive] ** alpha
    return eig_hermitian(a).recompose(powered)


def support_projection(a: HermitianMatrix, tol: ToleranceModel = DEFAULT_TOLERANCE) -> HermitianMatrix:
    """Orthogonal projector onto the numerical range of a PSD matrix (``A^0``)."""
    return matrix_power(a, 0.0, tol)


def hermitized_product(
    a: HermitianMatrix,
    b: HermitianMatrix,
    alpha: float,
    side: Literal["B", "A"] = "B",
    tol: ToleranceModel = DEFAULT_TOLERANCE,
) -> HermitianMatrix:
    """Hermitian matrix similar to ``A^alpha B^(1-alpha)``.

    ``side="B"``: ``B^((1-alpha)/2) A^alpha B^((1-alpha)/2)``.
    ``side="A"``: ``A^(alpha/2) B^(1-alpha) A^(alpha/2)``.
    Both have the eigenvalues of the (non-Hermitian) product.
    """
    alpha = check_alpha(alpha)
    check_same_dim(a, b)
    if side == "B":
        outer = matrix_power(b, (1.0 - alpha) / 2.0, tol)
        inner = matrix_power(a, alpha, tol)
    elif side == "A":
        outer = matrix_power(a, alpha / 2.0, tol)
        inner = matrix_power(b, 1.0 - alpha, tol)
    else:
        raise InvalidInput(f"side must be 'A' or 'B', got {side!r}")
    return HermitianMatrix.symmetrized(outer.entries @ inner.entries @ outer.entries)


def eig_product(
    a: HermitianMatrix,
    b: HermitianMatrix,
    alpha: float,
    tol: ToleranceModel = DEFAULT_TOLERANCE,
) -> np.ndarray:
    """Descending eigenvalues of ``A^alpha B^(1-alpha)``.

    Computed as the eigenvalues of ``B^((1-alpha)/2) A^alpha B^((1-alpha)/2)``;
    entries within ``-tol`` of zero are clamped to 0.

    Raises:
        ShapeError: Dimension mismatch.
        NotPSD: ``A`` or ``B`` is not PSD within tolerance.
    """
    product = hermitized_product(a, b, alpha, side="B", tol=tol)
    decomposition = eig_hermitian(product)
    threshold = tol.effective(decomposition.spectral_norm)
    if decomposition.lambda_min < -threshold:
        logger.warning(
            f"eig_product: Hermitization has eigenvalue {decomposition.lambda_min:.3e} "
            f"below -{threshold:.3e}; clamping to 0"
        )
    return np.maximum(decomposition.eigenvalues, 0.0)
