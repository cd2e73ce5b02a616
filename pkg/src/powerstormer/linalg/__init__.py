"""Dense Hermitian linear algebra: types, Jacobi eigensolver, functional calculus."""

from powerstormer.linalg.eigen import eig_hermitian, eigenvalues, spectral_norm
from powerstormer.linalg.functions import (PSDWitness, eig_product,
                                           hermitized_product, is_psd,
                                           matrix_function, matrix_power,
                                           psd_eigenvalues, support_projection)
from powerstormer.linalg.hermitian import HermitianMatrix, SpectralDecomposition

__all__ = [
    "HermitianMatrix",
    "SpectralDecomposition",
    "PSDWitness",
    "eig_hermitian",
    "eigenvalues",
    "spectral_norm",
    "matrix_function",
    "matrix_power",
    "support_projection",
    "hermitized_product",
    "is_psd",
    "psd_eigenvalues",
    "eig_product",
]
