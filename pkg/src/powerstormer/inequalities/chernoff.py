"""
Quantum Chernoff quantity ``Q = min_{alpha in [0, 1]} Tr(A^alpha B^(1-alpha))``.

A fixed 101-point grid locates the bracket, golden-section search refines
it. Only continuity of the objective is assumed.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from powerstormer.linalg import HermitianMatrix, eig_product
from powerstormer.linalg.functions import check_same_dim, psd_eigenvalues
from powerstormer.tolerance import DEFAULT_TOLERANCE, ToleranceModel

logger = logging.getLogger("PowerStormer.Chernoff")

GRID_POINTS = 101
REFINE_WIDTH = 1e-8
PHI_RATIO = 2.0 / (1.0 + math.sqrt(5.0))


@dataclass(frozen=True)
class GoldenSectionResult:
    argmin: float
    minimum: float
    iterations: int
    converged: bool


def golden_section(
    f: Callable[[float], float],
    lower: float,
    upper: float,
    tol: float = REFINE_WIDTH,
    max_iterations: int = 200,
) -> GoldenSectionResult:
    """Minimize ``f`` on ``[lower, upper]`` until the bracket is narrower than ``tol``.

    The endpoints are compared against the interior estimate, so a minimum on
    the boundary is returned exactly.
    """
    x_lower, x_upper = float(lower), float(upper)
    f_lower0, f_upper0 = f(x_lower), f(x_upper)
    x1 = x_upper - PHI_RATIO * (x_upper - x_lower)
    x2 = x_lower + PHI_RATIO * (x_upper - x_lower)
    f1, f2 = f(x1), f(x2)

    iteration = 0
    while iteration < max_iterations and abs(x_upper - x_lower) > tol:
        if f2 > f1:
            x_upper, x2, f2 = x2, x1, f1
            x1 = x_upper - PHI_RATIO * (x_upper - x_lower)
            f1 = f(x1)
        else:
            x_lower, x1, f1 = x1, x2, f2
            x2 = x_lower + PHI_RATIO * (x_upper - x_lower)
            f2 = f(x2)
        iteration += 1

    x_mid = 0.5 * (x_lower + x_upper)
    f_mid = f(x_mid)
    candidates = [(f_mid, x_mid), (f_lower0, float(lower)), (f_upper0, float(upper))]
    minimum, argmin = min(candidates, key=lambda pair: pair[0])

    converged = iteration < max_iterations and not (math.isnan(f1) or math.isnan(f2))
    return GoldenSectionResult(argmin=argmin, minimum=minimum, iterations=iteration, converged=converged)


@dataclass(frozen=True)
class ChernoffResult:
    """Minimizer and minimum of ``alpha -> Tr(A^alpha B^(1-alpha))``.

    Attributes:
        alpha_star: A minimizer in [0, 1].
        q_value: The minimum ``Q``.
        grid_alphas: The scan grid.
        grid_values: Objective on the grid.
        refined: Whether golden-section search improved on the best grid point.
    """

    alpha_star: float
    q_value: float
    grid_alphas: np.ndarray
    grid_values: np.ndarray
    refined: bool

    @property
    def exponent(self) -> float:
        """``-ln Q``; infinite when ``Q = 0``."""
        return math.inf if self.q_value <= 0.0 else -math.log(self.q_value)


def chernoff_objective(
    a: HermitianMatrix, b: HermitianMatrix, tol: ToleranceModel = DEFAULT_TOLERANCE
) -> Callable[[float], float]:
    """``alpha -> Tr(A^alpha B^(1-alpha))`` as a sum of product eigenvalues."""
    check_same_dim(a, b)

    def objective(alpha: float) -> float:
        return float(np.sum(eig_product(a, b, min(max(alpha, 0.0), 1.0), tol)))

    return objective


def chernoff_exponent(
    a: HermitianMatrix, b: HermitianMatrix, tol: ToleranceModel = DEFAULT_TOLERANCE
) -> ChernoffResult:
    """Minimize ``Tr(A^alpha B^(1-alpha))`` over ``alpha in [0, 1]``.

    Grid values within tolerance of the grid minimum are ties, broken toward
    ``alpha = 0.5``. The refined point replaces the grid point only when it is
    lower by more than the tolerance.

    Raises:
        NotPSD: ``A`` or ``B`` is not PSD within tolerance.
        ShapeError: Dimension mismatch.
    """
    psd_eigenvalues(a, tol, name="A")
    psd_eigenvalues(b, tol, name="B")
    objective = chernoff_objective(a, b, tol)

    alphas = np.linspace(0.0, 1.0, GRID_POINTS)
    values = np.array([objective(float(alpha)) for alpha in alphas])

    best = float(np.min(values))
    threshold = tol.effective(max(1.0, abs(best)))
    ties = np.flatnonzero(values <= best + threshold)
    center = (GRID_POINTS - 1) // 2
    k = int(min(ties, key=lambda i: (abs(int(i) - center), int(i))))

    alpha_star, q_value = float(alphas[k]), float(values[k])
    lower = float(alphas[max(k - 1, 0)])
    upper = float(alphas[min(k + 1, GRID_POINTS - 1)])
    search = golden_section(objective, lower, upper)
    if not search.converged:
        logger.warning(f"chernoff_exponent: golden-section search did not converge on [{lower}, {upper}]")

    refined = search.minimum < q_value - threshold
    if refined:
        alpha_star, q_value = search.argmin, search.minimum

    logger.debug(f"chernoff_exponent: alpha*={alpha_star:.10f} Q={q_value:.12g} refined={refined}")
    return ChernoffResult(
        alpha_star=alpha_star,
        q_value=q_value,
        grid_alphas=alphas,
        grid_values=values,
        refined=refined,
    )
