"""
Cyclic complex Jacobi eigensolver for dense Hermitian matrices.

Each rotation first removes the phase of the pivot ``a[p, q]`` with a diagonal
unitary and then applies a real Givens rotation, so the combined 2 x 2 block is

    J = [[c,            s           ],
         [-s e^{-i phi}, c e^{-i phi}]]

and ``A <- J* A J``, ``V <- V J``. A sweep visits every pair ``(p, q)`` once
in round-robin order: each of its ``n - 1`` (``n`` for odd ``n``) rounds is a
set of disjoint pairs whose rotations commute, so a round is applied to whole
row and column blocks at once. Sweeps run until the off-diagonal Frobenius
mass is at most ``1e-14 * ||A||_F``.
"""

import logging
from functools import lru_cache
from typing import List, Tuple

import numpy as np

from powerstormer.exceptions import ConvergenceError, InvalidInput
from powerstormer.linalg.hermitian import HermitianMatrix, SpectralDecomposition

logger = logging.getLogger("PowerStormer.Eigen")

MAX_SWEEPS = 100
OFF_DIAGONAL_RTOL = 1e-14


def _off_diagonal_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


@lru_cache(maxsize=None)
def round_robin_schedule(n: int) -> Tuple[Tuple[np.ndarray, np.ndarray], ...]:
    """Rounds of disjoint pairs ``(p, q)``, ``p < q``, covering every pair once.

    Circle method: index 0 stays put while the others rotate; an odd ``n`` gets
    a dummy index whose pairs are dropped.
    """
    m = n + (n % 2)
    ring = list(range(1, m))
    rounds: List[Tuple[np.ndarray, np.ndarray]] = []
    for _ in range(m - 1):
        order = [0] + ring
        pairs = [(order[i], order[m - 1 - i]) for i in range(m // 2)]
        pairs = [(min(i, j), max(i, j)) for i, j in pairs if max(i, j) < n]
        if pairs:
            p, q = (np.array(side, dtype=np.intp) for side in zip(*pairs))
            p.setflags(write=False)
            q.setflags(write=False)
            rounds.append((p, q))
        ring = ring[-1:] + ring[:-1]
    return tuple(rounds)


def _rotate_round(a: np.ndarray, v: np.ndarray, p: np.ndarray, q: np.ndarray) -> None:
    """Zero ``a[p_k, q_k]`` for every pair of one round, in place."""
    apq = a[p, q]
    magnitude = np.abs(apq)
    active = magnitude > 0.0
    if not np.any(active):
        return
    safe = np.where(active, magnitude, 1.0)

    phase_conj = np.where(active, np.conj(apq) / safe, 1.0)
    theta = (a[q, q].real - a[p, p].real) / (2.0 * safe)
    t = np.copysign(1.0, theta) / (np.abs(theta) + np.hypot(theta, 1.0))
    t = np.where(active, t, 0.0)
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    phase = np.conj(phase_conj)

    # Columns: A[:, (p, q)] @ J
    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - (s * phase_conj) * col_q
    a[:, q] = s * col_p + (c * phase_conj) * col_q

    # Rows: J* @ A[(p, q), :]
    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c[:, None] * row_p - (s * phase)[:, None] * row_q
    a[q, :] = s[:, None] * row_p + (c * phase)[:, None] * row_q

    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real

    vec_p = v[:, p].copy()
    vec_q = v[:, q].copy()
    v[:, p] = c * vec_p - (s * phase_conj) * vec_q
    v[:, q] = s * vec_p + (c * phase_conj) * vec_q


def jacobi_eigh(entries: np.ndarray) -> SpectralDecomposition:
    """Diagonalize a Hermitian array with cyclic Jacobi sweeps.

    Args:
        entries: n x n Hermitian complex array (not modified).

    Returns:
        SpectralDecomposition with eigenvalues sorted descending; the sort is
        stable, so exact ties keep the Jacobi diagonal order.

    Raises:
        InvalidInput: Non-finite entries.
        ConvergenceError: More than ``MAX_SWEEPS`` sweeps were needed.
    """
    a = np.array(entries, dtype=np.complex128)
    if not np.all(np.isfinite(a)):
        raise InvalidInput("Cannot diagonalize a matrix with non-finite entries")

    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    threshold = OFF_DIAGONAL_RTOL * float(np.linalg.norm(a))
    schedule = round_robin_schedule(n)

    sweeps = 0
    off = _off_diagonal_norm(a)
    while off > threshold:
        if sweeps >= MAX_SWEEPS:
            raise ConvergenceError(sweeps, off, threshold)
        for p, q in schedule:
            _rotate_round(a, v, p, q)
        sweeps += 1
        off = _off_diagonal_norm(a)

    logger.debug(f"Jacobi converged: n={n}, sweeps={sweeps}, off-norm={off:.3e}")

    eigenvalues = np.real(np.diag(a)).astype(np.float64)
    order = np.argsort(-eigenvalues, kind="stable")
    eigenvalues = eigenvalues[order]
    vectors = v[:, order]
    eigenvalues.setflags(write=False)
    vectors.setflags(write=False)
    return SpectralDecomposition(eigenvalues=eigenvalues, vectors=vectors, sweeps=sweeps)


def eig_hermitian(a: HermitianMatrix) -> SpectralDecomposition:
    """Spectral decomposition of ``a``, eigenvalues descending.

    The result is memoized on the (immutable) matrix object, so repeated
    calls on the same instance cost nothing and return identical bits.
    """
    cached = a._decomposition
    if cached is None:
        cached = jacobi_eigh(a.entries)
        a._decomposition = cached
    return cached


def eigenvalues(a: HermitianMatrix) -> np.ndarray:
    """Descending eigenvalues of ``a``."""
    return eig_hermitian(a).eigenvalues


def spectral_norm(a: HermitianMatrix) -> float:
    """Operator norm ``||A||_2 = max |lambda_i|``."""
    return eig_hermitian(a).spectral_norm
