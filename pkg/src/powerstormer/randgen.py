"""
Seeded, reproducible matrix ensembles.

Generator: numpy's ``PCG64`` bit generator (128-bit LCG with the XSL-RR
output permutation) seeded through ``numpy.random.SeedSequence``. Normal
variates do not use numpy's ziggurat sampler; they come from the Box-Muller
transform applied to ``Generator.random`` doubles (53-bit uniforms), so the
stream is fixed by the PCG64 algorithm alone. A standard complex Gaussian is
``(x + i y) / sqrt(2)`` with independent standard normals ``x, y``.

Seeds for a campaign come from ``derive_seed(master, dim, trial)``; the
matrices inside a trial use ``split_seed(trial_seed, k)``.
"""

import math
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from numpy.random import PCG64, Generator, SeedSequence
from pydantic import BaseModel, ConfigDict, Field

from powerstormer.exceptions import InvalidInput
from powerstormer.linalg import HermitianMatrix, eig_hermitian
from powerstormer.linalg.functions import check_same_dim, psd_eigenvalues
from powerstormer.tolerance import DEFAULT_TOLERANCE, ToleranceModel

SEED_MASK = (1 << 64) - 1


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if seed < 0 or seed > SEED_MASK:
        raise InvalidInput(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def derive_seed(master_seed: int, dim: int, trial: int) -> int:
    """64-bit seed of trial ``trial`` at dimension ``dim``."""
    sequence = SeedSequence(_check_seed(master_seed), spawn_key=(int(dim), int(trial)))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def split_seed(seed: int, k: int) -> int:
    """``k``-th independent child seed of ``seed``."""
    sequence = SeedSequence(_check_seed(seed), spawn_key=(int(k),))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def rng_from_seed(seed: int) -> Generator:
    return Generator(PCG64(SeedSequence(_check_seed(seed))))


def standard_normals(rng: Generator, size: int) -> np.ndarray:
    """``size`` standard normal variates by the Box-Muller transform."""
    pairs = (int(size) + 1) // 2
    u1 = rng.random(pairs)
    u2 = rng.random(pairs)
    # 1 - u1 lies in (0, 1], so the log is finite
    radius = np.sqrt(-2.0 * np.log1p(-u1))
    angle = 2.0 * math.pi * u2
    out = np.empty(2 * pairs, dtype=np.float64)
    out[0::2] = radius * np.cos(angle)
    out[1::2] = radius * np.sin(angle)
    return out[:size]


def complex_gaussian(rng: Generator, shape: Tuple[int, ...]) -> np.ndarray:
    """Standard complex Gaussian array, ``E|z|^2 = 1``."""
    count = int(np.prod(shape))
    values = standard_normals(rng, 2 * count)
    z = (values[0::2] + 1j * values[1::2]) / math.sqrt(2.0)
    return z.reshape(shape)


def _check_dim(dim: int) -> int:
    dim = int(dim)
    if dim < 1:
        raise InvalidInput(f"dim must be at least 1, got {dim}")
    return dim


def random_psd(dim: int, rank: int, seed: int) -> HermitianMatrix:
    """Wishart-type ``G G*`` with ``G`` a ``dim x rank`` complex Gaussian matrix.

    Raises:
        InvalidInput: ``rank`` outside ``[1, dim]``.
    """
    dim = _check_dim(dim)
    rank = int(rank)
    if rank < 1 or rank > dim:
        raise InvalidInput(f"rank must lie in [1, {dim}], got {rank}")
    g = complex_gaussian(rng_from_seed(seed), (dim, rank))
    return HermitianMatrix.symmetrized(g @ g.conj().T)


def random_density(dim: int, seed: int) -> HermitianMatrix:
    """Full-rank Gram matrix normalized to unit trace."""
    p = random_psd(dim, dim, seed)
    return (1.0 / p.trace()) * p


def random_pure_state(dim: int, seed: int) -> HermitianMatrix:
    """Rank-one density matrix ``|psi><psi|`` of a normalized complex Gaussian vector."""
    dim = _check_dim(dim)
    psi = complex_gaussian(rng_from_seed(seed), (dim,))
    psi = psi / np.linalg.norm(psi)
    return HermitianMatrix.symmetrized(np.outer(psi, psi.conj()))


def random_unitary(dim: int, seed: int) -> np.ndarray:
    """Unitary from the QR factorization of a complex Gaussian matrix.

    The phases of ``R``'s diagonal are moved into ``Q`` so the factorization
    is unique.
    """
    dim = _check_dim(dim)
    z = complex_gaussian(rng_from_seed(seed), (dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    phases = np.where(np.abs(d) > 0.0, d / np.where(np.abs(d) > 0.0, np.abs(d), 1.0), 1.0)
    return q * phases


def random_hermitian(dim: int, seed: int) -> HermitianMatrix:
    """Gaussian unitary ensemble sample ``(Z + Z*) / 2``."""
    dim = _check_dim(dim)
    z = complex_gaussian(rng_from_seed(seed), (dim, dim))
    return HermitianMatrix.symmetrized(z)


def random_commuting_pair(dim: int, seed: int) -> Tuple[HermitianMatrix, HermitianMatrix]:
    """``V diag(a) V*`` and ``V diag(b) V*`` for one random unitary ``V``.

    ``a`` and ``b`` are independent with entries ``|z|^2`` for complex
    Gaussian ``z`` (unit-mean exponentials).
    """
    dim = _check_dim(dim)
    v = random_unitary(dim, split_seed(seed, 0))
    a = np.abs(complex_gaussian(rng_from_seed(split_seed(seed, 1)), (dim,))) ** 2
    b = np.abs(complex_gaussian(rng_from_seed(split_seed(seed, 2)), (dim,))) ** 2
    return HermitianMatrix.diag(a).conjugate_by(v), HermitianMatrix.diag(b).conjugate_by(v)


def random_dominated(
    a: HermitianMatrix,
    b: HermitianMatrix,
    seed: int,
    tol: ToleranceModel = DEFAULT_TOLERANCE,
) -> HermitianMatrix:
    """Random Hermitian ``T`` with ``T <= A`` and ``T <= B``.

    ``T0`` is a GUE sample scaled to ``(||A||_2 + ||B||_2) / 2``; the result is
    ``T0 - mu I`` with ``mu = max(lambda_max(T0 - A), lambda_max(T0 - B), 0)``.

    Raises:
        NotPSD: ``A`` or ``B`` is not PSD within tolerance.
        ShapeError: Dimension mismatch.
    """
    dim = check_same_dim(a, b)
    psd_eigenvalues(a, tol, name="A")
    psd_eigenvalues(b, tol, name="B")

    spread = 0.5 * (eig_hermitian(a).spectral_norm + eig_hermitian(b).spectral_norm)
    t0 = (spread if spread > 0.0 else 1.0) * random_hermitian(dim, seed)
    mu = max(eig_hermitian(t0 - a).lambda_max, eig_hermitian(t0 - b).lambda_max, 0.0)
    return t0.shifted(-mu)


class EnsembleKind(str, Enum):
    GRAM = "gram"
    DENSITY = "density"
    PURE = "pure"
    COMMUTING = "commuting"
    DOMINATED = "dominated"


class EnsembleSpec(BaseModel):
    """One pair ensemble: ``gram``, ``gram:<rank>``, ``density``, ``pure``,
    ``commuting`` or ``dominated``.

    ``rank`` applies to ``gram`` only and is clamped to the dimension when a
    pair is drawn.
    """

    model_config = ConfigDict(frozen=True)

    kind: EnsembleKind
    rank: Optional[int] = Field(default=None, ge=1)

    @classmethod
    def parse(cls, text: str) -> "EnsembleSpec":
        name, _, arg = str(text).strip().lower().partition(":")
        try:
            kind = EnsembleKind(name)
        except ValueError as e:
            raise InvalidInput(f"Unknown ensemble {text!r}") from e
        if not arg:
            return cls(kind=kind)
        if kind is not EnsembleKind.GRAM:
            raise InvalidInput(f"Ensemble {name!r} takes no rank")
        try:
            rank = int(arg)
        except ValueError as e:
            raise InvalidInput(f"Gram rank must be an integer, got {arg!r}") from e
        if rank < 1:
            raise InvalidInput(f"Gram rank must be at least 1, got {rank}")
        return cls(kind=kind, rank=rank)

    @property
    def label(self) -> str:
        return self.kind.value if self.rank is None else f"{self.kind.value}:{self.rank}"

    def __str__(self) -> str:
        return self.label


DEFAULT_ENSEMBLES: List[EnsembleSpec] = [
    EnsembleSpec.parse(text) for text in ("gram", "gram:2", "density", "pure", "commuting", "dominated")
]


def generate_pair(spec: EnsembleSpec, dim: int, seed: int) -> Tuple[HermitianMatrix, HermitianMatrix]:
    """Draw the ``(A, B)`` pair of one trial; ``A`` uses child seed 0, ``B`` child seed 1."""
    dim = _check_dim(dim)
    if spec.kind is EnsembleKind.GRAM:
        rank = dim if spec.rank is None else min(spec.rank, dim)
        return random_psd(dim, rank, split_seed(seed, 0)), random_psd(dim, rank, split_seed(seed, 1))
    if spec.kind is EnsembleKind.DENSITY:
        return random_density(dim, split_seed(seed, 0)), random_density(dim, split_seed(seed, 1))
    if spec.kind is EnsembleKind.PURE:
        return random_pure_state(dim, split_seed(seed, 0)), random_pure_state(dim, split_seed(seed, 1))
    if spec.kind is EnsembleKind.COMMUTING:
        return random_commuting_pair(dim, split_seed(seed, 0))
    return (
        random_psd(dim, dim, split_seed(seed, 0)),
        random_psd(dim, max(1, dim - 1), split_seed(seed, 1)),
    )


def competitor_seeds(seed: int, count: int) -> List[int]:
    """Child seeds ``2, 3, ...`` of a trial, used for dominated competitors."""
    return [split_seed(seed, 2 + j) for j in range(int(count))]
