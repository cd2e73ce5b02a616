"""Exceptions for the powerstormer package."""

from typing import Optional


class PowerStormerError(Exception):
    """Base exception for all powerstormer errors."""

    pass


class InvalidInput(PowerStormerError, ValueError):
    """Malformed input: non-finite entries, non-Hermitian data, out-of-range parameters."""

    pass


class ShapeError(InvalidInput):
    """Dimension or length mismatch between operands."""

    pass


class DomainError(InvalidInput):
    """A scalar function is undefined (non-finite) at some eigenvalue."""

    def __init__(self, message: str, eigenvalue: float) -> None:
        super().__init__(message)
        self.eigenvalue = eigenvalue


class NotPSD(PowerStormerError):
    """Matrix has an eigenvalue below the negative tolerance."""

    def __init__(self, min_eigenvalue: float, tolerance: float, name: str = "matrix") -> None:
        super().__init__(
            f"{name} is not positive semidefinite: "
            f"lambda_min = {min_eigenvalue:.6e} < -{tolerance:.6e}"
        )
        self.min_eigenvalue = min_eigenvalue
        self.tolerance = tolerance


class NearSingularA(PowerStormerError):
    """A is not strictly positive definite enough to form A^(-alpha/2)."""

    def __init__(self, ratio: float, threshold: float) -> None:
        super().__init__(
            f"A is near-singular: lambda_min/lambda_max = {ratio:.6e} <= {threshold:.6e}"
        )
        self.ratio = ratio
        self.threshold = threshold


class ConvergenceError(PowerStormerError):
    """Jacobi sweeps exhausted before the off-diagonal mass fell below threshold."""

    def __init__(self, sweeps: int, off_norm: float, threshold: Optional[float] = None) -> None:
        message = f"Jacobi eigensolver did not converge after {sweeps} sweeps (off-norm {off_norm:.3e}"
        if threshold is not None:
            message += f", threshold {threshold:.3e}"
        super().__init__(message + ")")
        self.sweeps = sweeps
        self.off_norm = off_norm


class ConfigError(PowerStormerError):
    """Invalid harness configuration."""

    pass


class ReportIOError(PowerStormerError, OSError):
    """A matrix file, report, or descriptor could not be read or written."""

    pass
