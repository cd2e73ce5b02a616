"""
Projection-shift construction for positive definite ``A``.

With ``X = A + B - |A - B|`` and ``T = 2 A^(alpha/2) B^(1-alpha) A^(alpha/2)``,
the surplus ``beta = Tr T - Tr X`` is removed from the bottom eigenvalue of
``T`` through the rank-one spectral projector ``Q`` onto its last eigenvector:

    T1      = T - beta Q
    shifted = 2 A^alpha B^(1-alpha) - beta A^(alpha/2) Q A^(-alpha/2)

``shifted`` is similar to ``T1``. The checked statement is the weak
majorization ``s(X) <_w s(T1)``, i.e. every Ky Fan norm (and so the trace
norm) of ``X`` is bounded by that of ``T1``.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from powerstormer.decomp import singular_values
from powerstormer.exceptions import InvalidInput, NearSingularA
from powerstormer.inequalities.checks import PairAnalysis
from powerstormer.inequalities.report import InequalityId, SlackReport, make_report
from powerstormer.linalg import HermitianMatrix, eig_hermitian, matrix_power
from powerstormer.linalg.functions import check_alpha
from powerstormer.norms import MajorizationResult, weakly_majorized
from powerstormer.tolerance import DEFAULT_TOLERANCE, ToleranceModel

logger = logging.getLogger("PowerStormer.Projection")


@dataclass(frozen=True)
class ProjectionShiftResult:
    """Intermediate matrices of the projection-shift construction.

    Attributes:
        beta: ``Tr T - Tr X``; nonnegative up to rounding.
        q: Rank-one projector onto the eigenvector of ``T``'s smallest eigenvalue.
        t1: ``T - beta Q``.
        shifted: ``2 A^alpha B^(1-alpha) - beta A^(alpha/2) Q A^(-alpha/2)``, not Hermitian in general.
        gamma_n: ``lambda_n(T) - beta``, the modified bottom eigenvalue of ``t1``.
        x: ``A + B - |A - B|``.
        t: ``2 A^(alpha/2) B^(1-alpha) A^(alpha/2)``.
        shifted_singular_values: Descending singular values of ``shifted``.
        shift_majorization: ``s(X) <_w s(shifted)``.
    """

    beta: float
    q: HermitianMatrix
    t1: HermitianMatrix
    shifted: np.ndarray
    gamma_n: float
    x: HermitianMatrix
    t: HermitianMatrix
    shifted_singular_values: np.ndarray
    shift_majorization: MajorizationResult

    @property
    def trace_gap(self) -> float:
        """``Tr T1 - Tr X``; zero up to rounding."""
        return self.t1.trace() - self.x.trace()


def general_singular_values(m: np.ndarray) -> np.ndarray:
    """Singular values of an arbitrary square matrix as ``sqrt(eig(M* M))``, descending."""
    m = np.asarray(m, dtype=np.complex128)
    gram = HermitianMatrix.symmetrized(m.conj().T @ m)
    return np.sqrt(np.maximum(eig_hermitian(gram).eigenvalues, 0.0))


def condition_ratio(a: HermitianMatrix) -> float:
    """``lambda_min(A) / lambda_max(A)``; 0 for the zero matrix."""
    decomposition = eig_hermitian(a)
    if decomposition.lambda_max <= 0.0:
        return 0.0
    return decomposition.lambda_min / decomposition.lambda_max


def lift_to_positive_definite(a: HermitianMatrix, min_ratio: float) -> Tuple[HermitianMatrix, float]:
    """Return ``(A + delta I, delta)`` with the smallest ``delta >= 0`` that makes
    ``lambda_min / lambda_max >= min_ratio``."""
    if not 0.0 < min_ratio < 1.0:
        raise InvalidInput(f"min_ratio must lie in (0, 1), got {min_ratio}")
    decomposition = eig_hermitian(a)
    lam_max, lam_min = decomposition.lambda_max, decomposition.lambda_min
    if lam_max <= 0.0:
        return a.shifted(1.0 - lam_min), 1.0 - lam_min
    if lam_min / lam_max >= min_ratio:
        return a, 0.0
    delta = (min_ratio * lam_max - lam_min) / (1.0 - min_ratio)
    return a.shifted(delta), delta


def projection_shift(
    a: HermitianMatrix,
    b: HermitianMatrix,
    alpha: float,
    tol: ToleranceModel = DEFAULT_TOLERANCE,
    analysis: Optional[PairAnalysis] = None,
) -> Tuple[ProjectionShiftResult, SlackReport]:
    """Build ``T1`` and ``shifted`` and check ``s(X) <_w s(T1)``.

    The report's slacks are the prefix-sum margins
    ``sum_{i<=k} s_i(T1) - sum_{i<=k} s_i(X)`` for ``k = 1..n``; ``k = n`` is
    the trace norm. ``analysis`` may carry ``X`` and the Hermitized products
    already computed for the same pair.

    Raises:
        NearSingularA: ``lambda_min(A) / lambda_max(A) <= tol.rel``.
        NotPSD: ``A`` or ``B`` is not PSD within tolerance.
        ShapeError: Dimension mismatch.
    """
    alpha = check_alpha(alpha)
    if analysis is None:
        analysis = PairAnalysis(a, b, tol)
    elif analysis.a is not a or analysis.b is not b:
        raise InvalidInput("analysis was built for a different pair")

    ratio = condition_ratio(a)
    if ratio <= tol.rel:
        raise NearSingularA(ratio, tol.rel)

    a_decomposition = eig_hermitian(a)
    a_half = matrix_power(a, alpha / 2.0, tol)
    a_inverse_half = a_decomposition.recompose(a_decomposition.eigenvalues ** (-alpha / 2.0))
    a_pow = matrix_power(a, alpha, tol)
    b_pow = matrix_power(b, 1.0 - alpha, tol)

    x = analysis.x
    # T = 2H shares H's eigenvectors
    h = analysis.hermitization(alpha)
    h_decomposition = eig_hermitian(h)
    t = 2.0 * h
    beta = t.trace() - x.trace()

    bottom = h_decomposition.vectors[:, -1]
    q = HermitianMatrix.symmetrized(np.outer(bottom, bottom.conj()))
    t1 = t - beta * q
    gamma_n = 2.0 * h_decomposition.lambda_min - beta

    shifted = 2.0 * (a_pow.entries @ b_pow.entries) - beta * (
        a_half.entries @ q.entries @ a_inverse_half.entries
    )
    shifted_values = general_singular_values(shifted)

    # T1 keeps the eigenvectors of T; only the bottom eigenvalue moves
    t1_values = 2.0 * np.array(h_decomposition.eigenvalues)
    t1_values[-1] = gamma_n
    t1_singular_values = np.sort(np.abs(t1_values))[::-1]

    x_values = singular_values(x)
    majorization = weakly_majorized(x_values, t1_singular_values, tol)
    shift_majorization = weakly_majorized(x_values, shifted_values, tol)

    if beta < -tol.effective(analysis.scale):
        logger.warning(f"projection_shift: negative beta {beta:.3e} at alpha={alpha:g}")

    result = ProjectionShiftResult(
        beta=float(beta),
        q=q,
        t1=t1,
        shifted=shifted,
        gamma_n=float(gamma_n),
        x=x,
        t=t,
        shifted_singular_values=shifted_values,
        shift_majorization=shift_majorization,
    )
    report = make_report(
        InequalityId.PROJECTION_SHIFT, alpha, majorization.margins, analysis.scale, tol
    )
    return result, report
