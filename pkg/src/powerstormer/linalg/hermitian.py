"""
Dense Hermitian matrix types.

``HermitianMatrix`` wraps a read-only ``complex128`` array that is Hermitian
to the last bit: input is validated against an absolute tolerance and then
replaced by ``(M + M*) / 2``. ``SpectralDecomposition`` is the output of the
eigensolver, eigenvalues sorted descending.
"""

from dataclasses import dataclass
from typing import Any, Optional

import numpy as np

from powerstormer.exceptions import InvalidInput, ShapeError

# Absolute Hermiticity tolerance applied to user-supplied entries.
HERMITIAN_ATOL = 1e-12


def _as_square_array(entries: Any) -> np.ndarray:
    try:
        arr = np.array(entries, dtype=np.complex128)
    except (TypeError, ValueError) as e:
        raise InvalidInput(f"Cannot interpret entries as a complex matrix: {e}") from e

    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InvalidInput(f"Expected a square matrix, got shape {arr.shape}")
    if arr.shape[0] < 1:
        raise InvalidInput("Matrix dimension must be at least 1")
    if not np.all(np.isfinite(arr)):
        raise InvalidInput("Matrix has non-finite entries")
    return arr


class HermitianMatrix:
    """Immutable dense Hermitian matrix.

    Args:
        entries: Anything ``numpy.array`` turns into an n x n complex array.
        atol: Maximum allowed ``|M[i, j] - conj(M[j, i])|`` before symmetrizing.

    Raises:
        InvalidInput: Non-square, empty, non-finite, or non-Hermitian input.
    """

    __slots__ = ("_entries", "_decomposition")

    # numpy scalars defer to the reflected operators below
    __array_ufunc__ = None

    def __init__(self, entries: Any, atol: float = HERMITIAN_ATOL) -> None:
        arr = _as_square_array(entries)
        asymmetry = float(np.max(np.abs(arr - arr.conj().T)))
        if asymmetry > atol:
            raise InvalidInput(
                f"Matrix is not Hermitian: max |M - M*| = {asymmetry:.3e} exceeds {atol:.1e}"
            )
        self._set(arr)

    def _set(self, arr: np.ndarray) -> None:
        sym = (arr + arr.conj().T) / 2.0
        sym.setflags(write=False)
        self._entries = sym
        self._decomposition = None

    @classmethod
    def symmetrized(cls, entries: Any) -> "HermitianMatrix":
        """Build from an array that is Hermitian in exact arithmetic.

        Used for products such as ``B^(1/2) M B^(1/2)`` whose rounding error
        can exceed the construction tolerance. Only finiteness is checked.
        """
        obj = cls.__new__(cls)
        obj._set(_as_square_array(entries))
        return obj

    @classmethod
    def identity(cls, dim: int) -> "HermitianMatrix":
        return cls.symmetrized(np.eye(dim, dtype=np.complex128))

    @classmethod
    def zeros(cls, dim: int) -> "HermitianMatrix":
        return cls.symmetrized(np.zeros((dim, dim), dtype=np.complex128))

    @classmethod
    def diag(cls, values: Any) -> "HermitianMatrix":
        """Real diagonal matrix.

        Raises:
            InvalidInput: ``values`` is not a 1-D vector of real numbers.
        """
        try:
            arr = np.asarray(values)
            real = np.asarray(arr.real, dtype=np.float64)
        except (TypeError, ValueError) as e:
            raise InvalidInput(f"Cannot interpret diagonal as real numbers: {e}") from e
        if np.iscomplexobj(arr) and np.any(arr.imag != 0.0):
            raise InvalidInput("A Hermitian diagonal must be real")
        if real.ndim != 1:
            raise InvalidInput(f"Expected a 1-D diagonal, got shape {real.shape}")
        return cls.symmetrized(np.diag(real).astype(np.complex128))

    @property
    def dim(self) -> int:
        return self._entries.shape[0]

    @property
    def entries(self) -> np.ndarray:
        """Read-only view of the underlying array."""
        return self._entries

    def to_array(self) -> np.ndarray:
        """Writable copy of the entries."""
        return np.array(self._entries)

    def trace(self) -> float:
        return float(np.real(np.trace(self._entries)))

    def frobenius_norm(self) -> float:
        return float(np.linalg.norm(self._entries))

    def conjugate_by(self, v: np.ndarray) -> "HermitianMatrix":
        """Return ``V A V*`` for a square matrix ``V``."""
        v = np.asarray(v, dtype=np.complex128)
        return HermitianMatrix.symmetrized(v @ self._entries @ v.conj().T)

    def commutator_norm(self, other: "HermitianMatrix") -> float:
        """Frobenius norm of ``AB - BA``."""
        ab = self._entries @ other.entries
        return float(np.linalg.norm(ab - ab.conj().T))

    def _check_same_dim(self, other: "HermitianMatrix") -> None:
        if self.dim != other.dim:
            raise ShapeError(f"Dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "HermitianMatrix") -> "HermitianMatrix":
        if not isinstance(other, HermitianMatrix):
            return NotImplemented
        self._check_same_dim(other)
        return HermitianMatrix.symmetrized(self._entries + other.entries)

    def __sub__(self, other: "HermitianMatrix") -> "HermitianMatrix":
        if not isinstance(other, HermitianMatrix):
            return NotImplemented
        self._check_same_dim(other)
        return HermitianMatrix.symmetrized(self._entries - other.entries)

    def __neg__(self) -> "HermitianMatrix":
        return HermitianMatrix.symmetrized(-self._entries)

    def __mul__(self, scalar: float) -> "HermitianMatrix":
        if isinstance(scalar, complex) or not np.isscalar(scalar):
            return NotImplemented
        return HermitianMatrix.symmetrized(self._entries * float(scalar))

    __rmul__ = __mul__

    def __matmul__(self, other: Any) -> np.ndarray:
        """Plain matrix product; the result is generally not Hermitian."""
        rhs = other.entries if isinstance(other, HermitianMatrix) else np.asarray(other)
        return self._entries @ rhs

    def shifted(self, epsilon: float) -> "HermitianMatrix":
        """Return ``A + epsilon * I``."""
        return HermitianMatrix.symmetrized(
            self._entries + epsilon * np.eye(self.dim, dtype=np.complex128)
        )

    def allclose(self, other: "HermitianMatrix", atol: float = 1e-10) -> bool:
        return self.dim == other.dim and bool(
            np.linalg.norm(self._entries - other.entries) <= atol
        )

    def __repr__(self) -> str:
        return f"HermitianMatrix(dim={self.dim}, trace={self.trace():.6g})"


@dataclass(frozen=True)
class SpectralDecomposition:
    """Descending eigenvalues with the unitary whose columns are eigenvectors.

    ``vectors[:, j]`` is the eigenvector for ``eigenvalues[j]``.
    """

    eigenvalues: np.ndarray
    vectors: np.ndarray
    sweeps: int = 0

    @property
    def dim(self) -> int:
        return int(self.eigenvalues.shape[0])

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def lambda_min(self) -> float:
        return float(self.eigenvalues[-1])

    @property
    def spectral_norm(self) -> float:
        return float(max(abs(self.eigenvalues[0]), abs(self.eigenvalues[-1])))

    def recompose(self, values: Optional[np.ndarray] = None) -> HermitianMatrix:
        """``U diag(values) U*``; defaults to the decomposition's own eigenvalues."""
        vals = self.eigenvalues if values is None else np.asarray(values, dtype=np.float64)
        return HermitianMatrix.symmetrized((self.vectors * vals) @ self.vectors.conj().T)

    def reconstruction_residual(self, original: HermitianMatrix) -> float:
        """Frobenius norm of ``U diag(lambda) U* - A``."""
        return float(np.linalg.norm(self.recompose().entries - original.entries))

    def unitarity_residual(self) -> float:
        """Frobenius norm of ``U* U - I``."""
        gram = self.vectors.conj().T @ self.vectors
        return float(np.linalg.norm(gram - np.eye(self.dim)))
