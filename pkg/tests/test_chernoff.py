"""Tests for the Chernoff minimization."""

import math

import numpy as np
import pytest

from powerstormer.decomp import sum_minus_abs
from powerstormer.exceptions import NotPSD, ShapeError
from powerstormer.inequalities import chernoff_exponent, golden_section
from powerstormer.inequalities.chernoff import GRID_POINTS, chernoff_objective
from powerstormer.linalg import HermitianMatrix, eig_product
from powerstormer.randgen import random_pure_state, split_seed
from powerstormer.tolerance import ToleranceModel


def _overlap(a: HermitianMatrix, b: HermitianMatrix) -> float:
    return float(np.real(np.trace(a.entries @ b.entries)))


class TestGoldenSection:
    def test_interior_minimum(self):
        result = golden_section(lambda x: (x - 0.3) ** 2, 0.0, 1.0)
        assert result.argmin == pytest.approx(0.3, abs=1e-6)
        assert result.converged

    def test_boundary_minimum_is_exact(self):
        result = golden_section(lambda x: x, 0.0, 1.0)
        assert result.argmin == 0.0
        assert result.minimum == 0.0

    def test_iteration_cap(self):
        result = golden_section(lambda x: (x - 0.5) ** 2, 0.0, 1.0, max_iterations=3)
        assert result.iterations == 3
        assert not result.converged


class TestChernoffExponent:
    def test_equal_density_matrices(self, density_pair):
        a, _ = density_pair
        result = chernoff_exponent(a, a)
        assert result.q_value == pytest.approx(1.0, abs=1e-9)
        assert result.alpha_star == 0.5
        assert not result.refined
        assert result.exponent == pytest.approx(0.0, abs=1e-9)

    def test_orthogonal_pure_states(self):
        result = chernoff_exponent(HermitianMatrix.diag([1.0, 0.0]), HermitianMatrix.diag([0.0, 1.0]))
        assert result.q_value == 0.0
        assert math.isinf(result.exponent)

    @pytest.mark.parametrize("dim", [2, 3])
    def test_pure_states_give_squared_overlap(self, rng_seed, dim):
        for k in range(5):
            psi = random_pure_state(dim, split_seed(rng_seed, 2 * k))
            phi = random_pure_state(dim, split_seed(rng_seed, 2 * k + 1))
            assert chernoff_exponent(psi, phi).q_value == pytest.approx(_overlap(psi, phi), abs=1e-9)

    @pytest.mark.slow
    def test_pure_states_many_pairs(self, rng_seed):
        for k in range(100):
            dim = 2 + k % 2
            psi = random_pure_state(dim, split_seed(rng_seed, 1000 + 2 * k))
            phi = random_pure_state(dim, split_seed(rng_seed, 1001 + 2 * k))
            assert chernoff_exponent(psi, phi).q_value == pytest.approx(_overlap(psi, phi), abs=1e-9)

    def test_density_pair(self, density_pair):
        a, b = density_pair
        tol = ToleranceModel()
        result = chernoff_exponent(a, b, tol)
        assert 0.0 <= result.alpha_star <= 1.0
        assert result.grid_alphas.shape == (GRID_POINTS,)
        assert result.q_value <= float(np.min(result.grid_values)) + 1e-9
        assert result.q_value <= 1.0 + 1e-9

    def test_trace_bound(self, density_pair):
        a, b = density_pair
        result = chernoff_exponent(a, b)
        assert sum_minus_abs(a, b).trace() / 2.0 <= result.q_value + 1e-9

    def test_objective_is_product_trace(self, density_pair):
        a, b = density_pair
        objective = chernoff_objective(a, b)
        assert objective(0.25) == pytest.approx(float(np.sum(eig_product(a, b, 0.25))), abs=1e-14)

    def test_indefinite_input(self):
        with pytest.raises(NotPSD):
            chernoff_exponent(HermitianMatrix.diag([1.0, -1.0]), HermitianMatrix.identity(2))

    def test_dimension_mismatch(self):
        with pytest.raises(ShapeError):
            chernoff_exponent(HermitianMatrix.identity(2), HermitianMatrix.identity(3))
