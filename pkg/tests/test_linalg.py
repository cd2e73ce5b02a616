"""Tests for Hermitian matrices, the Jacobi eigensolver and the functional calculus."""

import math
from unittest.mock import patch

import numpy as np
import pytest

from powerstormer.exceptions import ConvergenceError, DomainError, InvalidInput, NotPSD, ShapeError
from powerstormer.linalg import (HermitianMatrix, eig_hermitian, eig_product, hermitized_product,
                                 is_psd, matrix_function, matrix_power, support_projection)
from powerstormer.linalg.eigen import jacobi_eigh, round_robin_schedule
from powerstormer.randgen import random_hermitian, random_psd, random_unitary, split_seed


class TestHermitianMatrix:
    """Construction and arithmetic of HermitianMatrix."""

    def test_symmetrizes_within_tolerance(self):
        m = HermitianMatrix([[1.0, 2.0 + 1e-13j], [2.0, 3.0]])
        assert np.array_equal(m.entries, m.entries.conj().T)

    def test_rejects_non_hermitian(self):
        with pytest.raises(InvalidInput):
            HermitianMatrix([[1.0, 2.0], [0.0, 1.0]])

    def test_rejects_non_square(self):
        with pytest.raises(InvalidInput):
            HermitianMatrix([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])

    def test_rejects_non_finite(self):
        with pytest.raises(InvalidInput):
            HermitianMatrix([[float("nan"), 0.0], [0.0, 1.0]])

    def test_entries_are_read_only(self):
        m = HermitianMatrix.identity(2)
        with pytest.raises(ValueError):
            m.entries[0, 0] = 5.0

    def test_dimension_mismatch(self):
        with pytest.raises(ShapeError):
            HermitianMatrix.identity(2) + HermitianMatrix.identity(3)

    def test_diag_rejects_complex_entries(self):
        with pytest.raises(InvalidInput):
            HermitianMatrix.diag([1.0, 1.0 + 2.0j])

    def test_diag_accepts_real_valued_complex_array(self):
        m = HermitianMatrix.diag(np.array([2.0, 3.0], dtype=np.complex128))
        assert np.array_equal(m.entries, np.diag([2.0, 3.0]).astype(np.complex128))

    def test_diag_rejects_matrix_input(self):
        with pytest.raises(InvalidInput):
            HermitianMatrix.diag([[1.0, 0.0], [0.0, 1.0]])

    def test_scalar_multiplication(self):
        m = 2.0 * HermitianMatrix.diag([1.0, 3.0])
        assert np.allclose(np.diag(m.entries).real, [2.0, 6.0])


class TestEigHermitian:
    """The cyclic Jacobi eigensolver."""

    def test_diagonal_input(self):
        decomposition = eig_hermitian(HermitianMatrix.diag([1.0, 2.0, 3.0]))
        assert np.array_equal(decomposition.eigenvalues, [3.0, 2.0, 1.0])
        assert np.allclose(np.abs(decomposition.vectors), np.eye(3)[:, ::-1])

    def test_swap_matrix(self):
        a = HermitianMatrix([[0, 1], [1, 0]])
        decomposition = eig_hermitian(a)
        assert np.allclose(decomposition.eigenvalues, [1.0, -1.0], atol=1e-14)
        assert np.allclose(np.abs(decomposition.vectors), 1.0 / math.sqrt(2.0), atol=1e-14)
        for j, lam in enumerate(decomposition.eigenvalues):
            v = decomposition.vectors[:, j]
            assert np.allclose(a.entries @ v, lam * v, atol=1e-13)

    def test_random_gram_reconstruction(self, rng_seed):
        a = random_psd(6, 6, rng_seed)
        decomposition = eig_hermitian(a)
        scale = max(1.0, decomposition.spectral_norm)
        assert decomposition.reconstruction_residual(a) <= 1e-10 * scale
        assert decomposition.unitarity_residual() <= 1e-10 * 6

    def test_eigenvalues_descending(self, rng_seed):
        values = eig_hermitian(random_hermitian(7, rng_seed)).eigenvalues
        assert np.all(np.diff(values) <= 0.0)

    def test_matches_lapack(self, rng_seed):
        a = random_hermitian(8, rng_seed)
        expected = np.sort(np.linalg.eigvalsh(a.entries))[::-1]
        assert np.allclose(eig_hermitian(a).eigenvalues, expected, atol=1e-11)

    def test_trace_consistency(self, rng_seed):
        a = random_hermitian(5, rng_seed)
        total = float(np.sum(eig_hermitian(a).eigenvalues))
        assert abs(total - a.trace()) <= 1e-10 * (1.0 + abs(a.trace()))

    def test_unitary_invariance(self, rng_seed):
        a = random_psd(5, 5, split_seed(rng_seed, 0))
        v = random_unitary(5, split_seed(rng_seed, 1))
        rotated = a.conjugate_by(v)
        assert np.allclose(eig_hermitian(rotated).eigenvalues, eig_hermitian(a).eigenvalues, atol=1e-9)

    def test_deterministic(self, rng_seed):
        a = random_hermitian(6, rng_seed)
        first = jacobi_eigh(a.entries)
        second = jacobi_eigh(a.entries)
        assert np.array_equal(first.eigenvalues, second.eigenvalues)
        assert np.array_equal(first.vectors, second.vectors)

    def test_memoized_on_matrix(self, rng_seed):
        a = random_hermitian(3, rng_seed)
        assert eig_hermitian(a) is eig_hermitian(a)

    @pytest.mark.parametrize("n", [1, 2, 5, 8])
    def test_round_robin_schedule_covers_every_pair_once(self, n):
        seen = []
        for p, q in round_robin_schedule(n):
            assert len(set(p.tolist()) | set(q.tolist())) == 2 * len(p)
            assert np.all(p < q)
            seen.extend(zip(p.tolist(), q.tolist()))
        assert sorted(seen) == [(p, q) for p in range(n) for q in range(p + 1, n)]

    @pytest.mark.parametrize("n", [3, 7])
    def test_odd_dimension_matches_lapack(self, rng_seed, n):
        a = random_hermitian(n, rng_seed)
        expected = np.sort(np.linalg.eigvalsh(a.entries))[::-1]
        assert np.allclose(eig_hermitian(a).eigenvalues, expected, atol=1e-12 * max(1.0, abs(expected).max()))

    def test_sweep_cap(self):
        a = HermitianMatrix([[1.0, 0.5], [0.5, 2.0]])
        with patch("powerstormer.linalg.eigen.MAX_SWEEPS", 0):
            with pytest.raises(ConvergenceError):
                eig_hermitian(a)

    def test_non_finite_array(self):
        with pytest.raises(InvalidInput):
            jacobi_eigh(np.array([[np.inf, 0.0], [0.0, 1.0]]))

    @pytest.mark.slow
    def test_fidelity_over_many_dimensions(self, rng_seed):
        for i in range(500):
            n = 2 + i % 63
            a = random_hermitian(n, split_seed(rng_seed, i))
            decomposition = eig_hermitian(a)
            assert decomposition.reconstruction_residual(a) <= 1e-10 * max(1.0, decomposition.spectral_norm)
            assert decomposition.unitarity_residual() <= 1e-10 * n


class TestMatrixFunction:
    """Spectral functional calculus."""

    def test_identity_function(self, rng_seed):
        a = random_hermitian(4, rng_seed)
        assert matrix_function(a, lambda x: x).allclose(a, atol=1e-12)

    def test_square_of_swap(self):
        result = matrix_function(HermitianMatrix([[0, 1], [1, 0]]), lambda x: x * x)
        assert result.allclose(HermitianMatrix.identity(2), atol=1e-12)

    def test_exponential(self):
        result = matrix_function(HermitianMatrix.diag([0.0, math.log(2.0)]), math.exp)
        assert result.allclose(HermitianMatrix.diag([1.0, 2.0]), atol=1e-12)

    def test_domain_error_reports_eigenvalue(self):
        with pytest.raises(DomainError) as excinfo:
            matrix_function(HermitianMatrix.diag([1.0, 0.0]), math.log)
        assert excinfo.value.eigenvalue == 0.0

    def test_non_finite_result(self):
        with pytest.raises(DomainError):
            matrix_function(HermitianMatrix.diag([1.0, 0.0]), lambda x: 1.0 / x if x else math.inf)


class TestMatrixPower:
    """Fractional powers with the support-projection convention."""

    def test_square_root_of_diagonal(self):
        assert matrix_power(HermitianMatrix.diag([4.0, 9.0]), 0.5).allclose(
            HermitianMatrix.diag([2.0, 3.0]), atol=1e-12
        )

    def test_zero_power_is_support_projection(self):
        result = matrix_power(HermitianMatrix.diag([2.0, 0.0]), 0.0)
        assert result.allclose(HermitianMatrix.diag([1.0, 0.0]), atol=1e-14)
        assert support_projection(HermitianMatrix.diag([2.0, 0.0])).allclose(result)

    def test_square_root_squares_back(self):
        a = HermitianMatrix([[2, 1], [1, 1]])
        root = matrix_power(a, 0.5)
        assert np.linalg.norm(root.entries @ root.entries - a.entries) <= 1e-10

    def test_power_composition(self, rng_seed):
        a = random_psd(4, 4, rng_seed)
        product = matrix_power(a, 0.3).entries @ matrix_power(a, 0.5).entries
        scale = max(1.0, eig_hermitian(a).spectral_norm)
        assert np.linalg.norm(product - matrix_power(a, 0.8).entries) <= 1e-8 * scale

    def test_small_negative_eigenvalue_clamped(self):
        result = matrix_power(HermitianMatrix.diag([1.0, -1e-14]), 0.5)
        assert result.allclose(HermitianMatrix.diag([1.0, 0.0]), atol=1e-14)

    def test_small_positive_eigenvalue_keeps_support(self):
        result = matrix_power(HermitianMatrix.diag([1.0, 1e-10]), 0.1)
        assert result.allclose(HermitianMatrix.diag([1.0, 0.1]), atol=1e-12)
        assert support_projection(HermitianMatrix.diag([1.0, 1e-10])).allclose(HermitianMatrix.identity(2))

    def test_indefinite_input(self):
        with pytest.raises(NotPSD):
            matrix_power(HermitianMatrix.diag([1.0, -1.0]), 0.5)

    @pytest.mark.parametrize("alpha", [-0.1, 1.5, float("nan")])
    def test_alpha_out_of_range(self, alpha):
        with pytest.raises(InvalidInput):
            matrix_power(HermitianMatrix.identity(2), alpha)


class TestIsPsd:
    """Positive-semidefiniteness test with witness."""

    def test_singular_psd(self):
        witness = is_psd(HermitianMatrix.diag([1.0, 0.0]))
        assert witness
        assert witness.lambda_min == 0.0

    def test_indefinite(self):
        witness = is_psd(HermitianMatrix.diag([1.0, -1.0]))
        assert not witness
        assert witness.lambda_min == -1.0

    def test_gram_matrix(self, rng_seed):
        assert is_psd(random_psd(5, 3, rng_seed))


class TestEigProduct:
    """Eigenvalues of A^alpha B^(1-alpha)."""

    @pytest.mark.parametrize("alpha", [0.0, 0.25, 1.0])
    def test_equal_commuting_arguments(self, alpha):
        a = HermitianMatrix.diag([2.0, 3.0])
        assert np.allclose(eig_product(a, a, alpha), [3.0, 2.0], atol=1e-12)

    def test_orthogonal_supports(self):
        values = eig_product(HermitianMatrix.diag([1.0, 0.0]), HermitianMatrix.diag([0.0, 1.0]), 0.5)
        assert np.array_equal(values, [0.0, 0.0])

    def test_small_eigenvalue_survives_small_power(self):
        values = eig_product(HermitianMatrix.diag([1.0, 1e-10]), HermitianMatrix.diag([0.0, 1.0]), 0.1)
        assert np.allclose(values, [0.1, 0.0], atol=1e-12)

    def test_matches_general_eigenvalue_oracle(self, psd_pair):
        a, b = psd_pair
        product = matrix_power(a, 0.3).entries @ matrix_power(b, 0.7).entries
        expected = np.sort(np.linalg.eigvals(product).real)[::-1]
        scale = max(1.0, float(np.max(np.abs(expected))))
        assert np.allclose(eig_product(a, b, 0.3), expected, atol=1e-8 * scale)

    def test_both_hermitizations_agree(self, psd_pair):
        a, b = psd_pair
        via_a = eig_hermitian(hermitized_product(a, b, 0.6, side="A")).eigenvalues
        scale = max(1.0, float(via_a[0]))
        assert np.allclose(eig_product(a, b, 0.6), via_a, atol=1e-8 * scale)

    def test_dimension_mismatch(self):
        with pytest.raises(ShapeError):
            eig_product(HermitianMatrix.identity(2), HermitianMatrix.identity(3), 0.5)

    def test_invalid_side(self):
        with pytest.raises(InvalidInput):
            hermitized_product(HermitianMatrix.identity(2), HermitianMatrix.identity(2), 0.5, side="C")
