"""
Structural decompositions of Hermitian matrices.

Absolute value, Jordan decomposition ``A = A_+ - A_-``, singular values, and
the clamp construction of a common lower bound ``S <= A, S <= B`` for two
positive semidefinite matrices (the "parallel minimum" ``min{A, B}``).
"""

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from powerstormer.exceptions import InvalidInput
from powerstormer.linalg import HermitianMatrix, eig_hermitian, matrix_function
from powerstormer.linalg.functions import RESOLUTION_RTOL, check_same_dim, psd_eigenvalues
from powerstormer.tolerance import DEFAULT_TOLERANCE, ToleranceModel

logger = logging.getLogger("PowerStormer.Decomp")


class Pivot(str, Enum):
    """Which argument of ``parallel_min`` is inverted."""

    A = "A"
    B = "B"


@dataclass(frozen=True)
class JordanPair:
    """Positive and negative parts of a Hermitian matrix.

    ``split_index`` is the number of eigenvalues treated as nonnegative.
    """

    plus: HermitianMatrix
    minus: HermitianMatrix
    split_index: int

    def recompose(self) -> HermitianMatrix:
        """``plus - minus``."""
        return self.plus - self.minus

    def absolute(self) -> HermitianMatrix:
        """``plus + minus``, i.e. ``|A|``."""
        return self.plus + self.minus

    def orthogonality_residual(self) -> float:
        """Frobenius norm of ``plus @ minus``."""
        return float(np.linalg.norm(self.plus @ self.minus))


@dataclass(frozen=True)
class ParallelMinResult:
    """Output of the clamp construction.

    Attributes:
        s: The common lower bound.
        pivot: Argument that was inverted.
        regularization_epsilon: Shift added to the pivot when it was singular.
        clamp_values: ``t_i = min(d_i, 1)``, descending.
        ratio_eigenvalues: ``d_i``, eigenvalues of ``P^(-1/2) Q P^(-1/2)``.
        repair_norm: Spectral norm of the rounding excess removed from ``S``.
    """

    s: HermitianMatrix
    pivot: Pivot
    regularization_epsilon: float
    clamp_values: np.ndarray
    ratio_eigenvalues: np.ndarray
    repair_norm: float = 0.0


def abs_hermitian(a: HermitianMatrix) -> HermitianMatrix:
    """``|A|``: same eigenvectors, eigenvalues ``|lambda_i|``."""
    return matrix_function(a, abs)


def singular_values(a: HermitianMatrix) -> np.ndarray:
    """Singular values of a Hermitian matrix, descending."""
    return np.sort(np.abs(eig_hermitian(a).eigenvalues))[::-1]


def jordan_decompose(a: HermitianMatrix, tol: ToleranceModel = DEFAULT_TOLERANCE) -> JordanPair:
    """Split ``A`` into orthogonal PSD parts ``A = A_+ - A_-``.

    Eigenvalues with ``|lambda| <= tol`` (scale ``||A||_2``) count as zero and
    belong to the plus side; small negative ones are clamped to 0 there.
    """
    decomposition = eig_hermitian(a)
    values = decomposition.eigenvalues
    threshold = tol.effective(decomposition.spectral_norm)

    plus_values = np.where(values > 0.0, values, 0.0)
    minus_values = np.where(values < -threshold, -values, 0.0)
    split_index = int(np.count_nonzero(values >= -threshold))

    return JordanPair(
        plus=decomposition.recompose(plus_values),
        minus=decomposition.recompose(minus_values),
        split_index=split_index,
    )


def sum_minus_abs(a: HermitianMatrix, b: HermitianMatrix) -> HermitianMatrix:
    """``A + B - |A - B|``."""
    check_same_dim(a, b)
    return a + b - abs_hermitian(a - b)


def half_sum_gap(
    a: HermitianMatrix, b: HermitianMatrix, tol: ToleranceModel = DEFAULT_TOLERANCE
) -> float:
    """Largest Frobenius discrepancy between ``A + B - |A - B|`` and its two
    Jordan forms ``2(B - (A - B)_-)`` and ``2(A - (B - A)_-)``."""
    x = sum_minus_abs(a, b)
    via_b = 2.0 * (b - jordan_decompose(a - b, tol).minus)
    via_a = 2.0 * (a - jordan_decompose(b - a, tol).minus)
    return max(
        float(np.linalg.norm(x.entries - via_b.entries)),
        float(np.linalg.norm(x.entries - via_a.entries)),
    )


def difference_minus_gap(
    a: HermitianMatrix, b: HermitianMatrix, tol: ToleranceModel = DEFAULT_TOLERANCE
) -> float:
    """``min_i (lambda_i(B) - lambda_i((A - B)_-))``; nonnegative for PSD ``A, B``."""
    check_same_dim(a, b)
    minus = jordan_decompose(a - b, tol).minus
    return float(np.min(eig_hermitian(b).eigenvalues - eig_hermitian(minus).eigenvalues))


def _positive_part(x: np.ndarray) -> HermitianMatrix:
    decomposition = eig_hermitian(HermitianMatrix.symmetrized(x))
    return decomposition.recompose(np.maximum(decomposition.eigenvalues, 0.0))


def parallel_min(
    a: HermitianMatrix,
    b: HermitianMatrix,
    pivot: Pivot | str = Pivot.B,
    tol: ToleranceModel = DEFAULT_TOLERANCE,
) -> ParallelMinResult:
    """Common lower bound ``S <= A, S <= B`` by eigenvalue clamping.

    With pivot ``P`` (default ``B``) and other argument ``Q``, ``S`` equals
    ``P^(1/2) W diag(t) W* P^(1/2)`` where ``P^(-1/2) Q P^(-1/2) = W diag(d) W*``
    and ``t_i = min(d_i, 1)``. It is computed through the pencil
    ``H = Q + P``: with ``H^(-1/2) Q H^(-1/2) = V diag(mu) V*`` and
    ``G = H^(1/2) V``,

        S = G diag(min(mu, 1 - mu)) G*,  Q - S = G diag((2 mu - 1)_+) G*,
        P - S = G diag((1 - 2 mu)_+) G*,

    so both bounds are Gram matrices and ``d = mu / (1 - mu)``. ``mu`` lies in
    ``[0, 1]`` whatever the conditioning of ``P``. Rounding that still leaves
    ``S - Q`` or ``S - P`` with a positive part is removed from ``S``; the
    spectral norm of what was removed is ``repair_norm``.

    A singular pivot (``lambda_min(P) <= tol`` at scale ``||P||_2``) is replaced
    by ``P + eps I`` with ``eps = max(tol.abs, tol.rel * ||P||_2)``; the bound
    against the pivot then weakens to ``S <= P + eps I``.

    Raises:
        ShapeError: Dimension mismatch.
        NotPSD: ``A`` or ``B`` is not PSD within tolerance.
    """
    check_same_dim(a, b)
    try:
        pivot = Pivot(pivot)
    except ValueError as e:
        raise InvalidInput(f"pivot must be 'A' or 'B', got {pivot!r}") from e

    psd_eigenvalues(a, tol, name="A")
    psd_eigenvalues(b, tol, name="B")
    p, q = (b, a) if pivot is Pivot.B else (a, b)

    p_decomposition = eig_hermitian(p)
    threshold = tol.effective(p_decomposition.spectral_norm)
    epsilon = 0.0
    if p_decomposition.lambda_min <= threshold:
        epsilon = threshold
        logger.debug(
            f"parallel_min: pivot {pivot.value} singular (lambda_min="
            f"{p_decomposition.lambda_min:.3e}); regularizing with eps={epsilon:.3e}"
        )
    r = p.shifted(epsilon) if epsilon > 0.0 else p

    h_decomposition = eig_hermitian(q + r)
    h_values = np.maximum(h_decomposition.eigenvalues, 0.0)
    # directions where H is rounding noise carry no mass in S
    resolved = h_values > RESOLUTION_RTOL * h_decomposition.spectral_norm
    u = h_decomposition.vectors
    root = (u * np.sqrt(h_values)) @ u.conj().T
    inverse_values = np.zeros_like(h_values)
    inverse_values[resolved] = 1.0 / np.sqrt(h_values[resolved])
    inverse_root = (u * inverse_values) @ u.conj().T

    share = eig_hermitian(HermitianMatrix.symmetrized(inverse_root @ q.entries @ inverse_root))
    mu = np.clip(share.eigenvalues, 0.0, 1.0)
    d = np.full_like(mu, np.inf)
    below = mu < 1.0
    d[below] = mu[below] / (1.0 - mu[below])
    t = np.clip(d, 0.0, 1.0)

    factor = (root @ share.vectors) * np.sqrt(np.minimum(mu, 1.0 - mu))
    s = HermitianMatrix.symmetrized(factor @ factor.conj().T)

    excess_q = _positive_part(s.entries - q.entries)
    s = s - excess_q
    excess_r = _positive_part(s.entries - r.entries)
    s = s - excess_r
    repair_norm = eig_hermitian(excess_q).spectral_norm + eig_hermitian(excess_r).spectral_norm
    if repair_norm > 0.0:
        logger.debug(f"parallel_min: removed {repair_norm:.3e} of rounding excess from S")

    return ParallelMinResult(
        s=s,
        pivot=pivot,
        regularization_epsilon=epsilon,
        clamp_values=t,
        ratio_eigenvalues=d,
        repair_norm=repair_norm,
    )
