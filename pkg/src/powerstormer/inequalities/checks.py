"""
Checkers for the eigenvalue, trace and norm inequalities between
``X = A + B - |A - B|`` and ``2 A^alpha B^(1-alpha)`` for PSD ``A, B``.

Every checker returns slacks (right-hand side minus left-hand side). The
tolerance scale is ``||A||_2 + ||B||_2`` throughout.
"""

import logging
from dataclasses import replace
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from powerstormer.decomp import JordanPair, jordan_decompose, singular_values, sum_minus_abs
from powerstormer.inequalities.report import InequalityId, SlackReport, make_report
from powerstormer.linalg import HermitianMatrix, eig_hermitian, hermitized_product, psd_eigenvalues
from powerstormer.linalg.functions import check_alpha, check_same_dim
from powerstormer.norms import MajorizationResult, NormSpec, expand_norms, norm, weakly_majorized
from powerstormer.tolerance import DEFAULT_TOLERANCE, ToleranceModel

logger = logging.getLogger("PowerStormer.Inequalities")


class PairAnalysis:
    """Shared intermediate quantities for one PSD pair.

    ``X``, its Jordan parts and the per-alpha products are computed once and
    reused by every check on the pair.

    Raises:
        ShapeError: Dimension mismatch.
        NotPSD: ``A`` or ``B`` is not PSD within tolerance.
    """

    def __init__(
        self, a: HermitianMatrix, b: HermitianMatrix, tol: ToleranceModel = DEFAULT_TOLERANCE
    ) -> None:
        self.dim = check_same_dim(a, b)
        self.a = a
        self.b = b
        self.tol = tol
        self.a_eigenvalues = psd_eigenvalues(a, tol, name="A")
        self.b_eigenvalues = psd_eigenvalues(b, tol, name="B")
        self.scale = eig_hermitian(a).spectral_norm + eig_hermitian(b).spectral_norm
        self._products: Dict[float, np.ndarray] = {}
        self._hermitizations: Dict[float, HermitianMatrix] = {}

    @cached_property
    def x(self) -> HermitianMatrix:
        """``A + B - |A - B|``."""
        return sum_minus_abs(self.a, self.b)

    @cached_property
    def x_eigenvalues(self) -> np.ndarray:
        return eig_hermitian(self.x).eigenvalues

    @cached_property
    def x_parts(self) -> JordanPair:
        return jordan_decompose(self.x, self.tol)

    @cached_property
    def _loewner_gaps(self) -> np.ndarray:
        via_b = eig_hermitian(2.0 * self.b - self.x).lambda_min
        via_a = eig_hermitian(2.0 * self.a - self.x).lambda_min
        return np.array([via_b, via_a])

    def product_eigenvalues(self, alpha: float) -> np.ndarray:
        """Descending eigenvalues of ``A^alpha B^(1-alpha)``.

        Read off ``hermitization(alpha)``, which is similar to the product, so
        the eigenvalue and norm checks share one decomposition per alpha.
        """
        alpha = check_alpha(alpha)
        if alpha not in self._products:
            self._products[alpha] = np.maximum(eig_hermitian(self.hermitization(alpha)).eigenvalues, 0.0)
        return self._products[alpha]

    def hermitization(self, alpha: float) -> HermitianMatrix:
        """``A^(alpha/2) B^(1-alpha) A^(alpha/2)``."""
        alpha = check_alpha(alpha)
        if alpha not in self._hermitizations:
            self._hermitizations[alpha] = hermitized_product(
                self.a, self.b, alpha, side="A", tol=self.tol
            )
        return self._hermitizations[alpha]

    def _report(
        self,
        inequality_id: InequalityId,
        alpha: float,
        slacks: Sequence[float],
        norm_spec: Optional[NormSpec] = None,
    ) -> SlackReport:
        return make_report(inequality_id, alpha, slacks, self.scale, self.tol, norm_spec)

    def eig_dominance(self, alpha: float) -> SlackReport:
        slacks = 2.0 * self.product_eigenvalues(alpha) - self.x_eigenvalues
        return self._report(InequalityId.EIG_DOMINANCE, alpha, slacks)

    def trace(self, alpha: float) -> Tuple[SlackReport, SlackReport]:
        """``(TraceLower, TraceUpper)``."""
        trace_x = float(np.sum(self.x_eigenvalues))
        upper = 2.0 * float(np.sum(self.product_eigenvalues(alpha))) - trace_x
        return (
            self._report(InequalityId.TRACE_LOWER, alpha, [trace_x]),
            self._report(InequalityId.TRACE_UPPER, alpha, [upper]),
        )

    def part_norms(self, alpha: float, spec: NormSpec) -> Tuple[SlackReport, SlackReport]:
        """``(PartPlusNorm, PartMinusNorm)`` for one concrete norm."""
        rhs = 2.0 * norm(self.hermitization(alpha), spec)
        plus = rhs - norm(self.x_parts.plus, spec)
        minus = rhs - norm(self.x_parts.minus, spec)
        return (
            self._report(InequalityId.PART_PLUS_NORM, alpha, [plus], spec),
            self._report(InequalityId.PART_MINUS_NORM, alpha, [minus], spec),
        )

    def operator_norm(self, alpha: float) -> SlackReport:
        spec = NormSpec.operator()
        lhs = max(norm(self.x_parts.plus, spec), norm(self.x_parts.minus, spec))
        rhs = 2.0 * norm(self.hermitization(alpha), spec)
        return self._report(InequalityId.OPERATOR_NORM, alpha, [rhs - lhs])

    def loewner_upper(self, alpha: float) -> SlackReport:
        """``X <= 2B`` and ``X <= 2A``; independent of alpha."""
        check_alpha(alpha)
        return self._report(InequalityId.LOEWNER_UPPER, alpha, self._loewner_gaps)

    def minus_part(self, alpha: float) -> SlackReport:
        """``lambda_i(X_-) <= 2 min(lambda_i(A), lambda_i(B))``; independent of alpha."""
        check_alpha(alpha)
        bound = 2.0 * np.minimum(self.a_eigenvalues, self.b_eigenvalues)
        slacks = bound - eig_hermitian(self.x_parts.minus).eigenvalues
        return self._report(InequalityId.MINUS_PART_SPECTRUM, alpha, slacks)

    def plus_majorization(self, alpha: float) -> MajorizationResult:
        """``s(X_+)`` weakly majorized by ``2 s(A^(alpha/2) B^(1-alpha) A^(alpha/2))``.

        Judged at the pair scale, so the verdict agrees with the Ky Fan
        ``PartPlusNorm`` reports.
        """
        result = weakly_majorized(
            singular_values(self.x_parts.plus),
            2.0 * singular_values(self.hermitization(alpha)),
            self.tol,
        )
        threshold = self.tol.effective(self.scale)
        return replace(result, holds=result.margin >= -threshold, tolerance=threshold)

    def evaluate(
        self,
        alpha: float,
        checks: Sequence[InequalityId],
        norms: Sequence[NormSpec] = (),
    ) -> List[SlackReport]:
        """Run the requested checks at one alpha; norm checks fan out over ``norms``."""
        enabled = set(checks)
        concrete = expand_norms(norms, self.dim)
        reports: List[SlackReport] = []

        if InequalityId.EIG_DOMINANCE in enabled:
            reports.append(self.eig_dominance(alpha))
        if enabled & {InequalityId.TRACE_LOWER, InequalityId.TRACE_UPPER}:
            lower, upper = self.trace(alpha)
            if InequalityId.TRACE_LOWER in enabled:
                reports.append(lower)
            if InequalityId.TRACE_UPPER in enabled:
                reports.append(upper)
        if enabled & {InequalityId.PART_PLUS_NORM, InequalityId.PART_MINUS_NORM}:
            for spec in concrete:
                plus, minus = self.part_norms(alpha, spec)
                if InequalityId.PART_PLUS_NORM in enabled:
                    reports.append(plus)
                if InequalityId.PART_MINUS_NORM in enabled:
                    reports.append(minus)
        if InequalityId.OPERATOR_NORM in enabled:
            reports.append(self.operator_norm(alpha))
        if InequalityId.LOEWNER_UPPER in enabled:
            reports.append(self.loewner_upper(alpha))
        if InequalityId.MINUS_PART_SPECTRUM in enabled:
            reports.append(self.minus_part(alpha))

        for report in reports:
            if not report.passed:
                logger.warning(
                    f"{report.inequality_id.value} violated at alpha={report.alpha:g}"
                    f"{' ' + report.norm_label if report.norm_spec else ''}: "
                    f"worst slack {report.worst_slack:.3e} < -{report.tolerance:.3e}"
                )
        return reports


def check_eig_dominance(
    a: HermitianMatrix, b: HermitianMatrix, alpha: float, tol: ToleranceModel = DEFAULT_TOLERANCE
) -> SlackReport:
    """``lambda_i(A + B - |A - B|) <= 2 lambda_i(A^alpha B^(1-alpha))`` for every i."""
    return PairAnalysis(a, b, tol).eig_dominance(alpha)


def check_trace(
    a: HermitianMatrix, b: HermitianMatrix, alpha: float, tol: ToleranceModel = DEFAULT_TOLERANCE
) -> Tuple[SlackReport, SlackReport]:
    """``0 <= Tr(A + B - |A - B|) <= 2 Tr(A^alpha B^(1-alpha))`` as (lower, upper)."""
    return PairAnalysis(a, b, tol).trace(alpha)


def check_part_norms(
    a: HermitianMatrix,
    b: HermitianMatrix,
    alpha: float,
    spec: NormSpec,
    tol: ToleranceModel = DEFAULT_TOLERANCE,
) -> Tuple[SlackReport, SlackReport]:
    """Norms of the positive and negative parts of ``A + B - |A - B|`` against
    ``2 |||A^(alpha/2) B^(1-alpha) A^(alpha/2)|||``."""
    return PairAnalysis(a, b, tol).part_norms(alpha, spec)


def check_operator_norm(
    a: HermitianMatrix, b: HermitianMatrix, alpha: float, tol: ToleranceModel = DEFAULT_TOLERANCE
) -> SlackReport:
    """``||A + B - |A - B| || <= 2 ||A^alpha B^(1-alpha)||`` in operator norm."""
    return PairAnalysis(a, b, tol).operator_norm(alpha)


def check_loewner_upper(
    a: HermitianMatrix, b: HermitianMatrix, alpha: float = 0.5, tol: ToleranceModel = DEFAULT_TOLERANCE
) -> SlackReport:
    return PairAnalysis(a, b, tol).loewner_upper(alpha)


def check_minus_part(
    a: HermitianMatrix, b: HermitianMatrix, alpha: float = 0.5, tol: ToleranceModel = DEFAULT_TOLERANCE
) -> SlackReport:
    return PairAnalysis(a, b, tol).minus_part(alpha)


def trace_distance(a: HermitianMatrix, b: HermitianMatrix) -> float:
    """``||A - B||_1 / 2``."""
    check_same_dim(a, b)
    return norm(a - b, NormSpec.trace()) / 2.0
