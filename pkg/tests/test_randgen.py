"""Tests for seeded random ensembles."""

import numpy as np
import pytest

from powerstormer.exceptions import InvalidInput
from powerstormer.linalg import HermitianMatrix, eig_hermitian, is_psd
from powerstormer.randgen import (DEFAULT_ENSEMBLES, SEED_MASK, EnsembleKind, EnsembleSpec,
                                  competitor_seeds, derive_seed, generate_pair,
                                  random_commuting_pair, random_density, random_dominated,
                                  random_pure_state, random_psd, random_unitary, rng_from_seed,
                                  split_seed, standard_normals)
from powerstormer.tolerance import ToleranceModel


class TestSeeds:
    def test_derive_seed_is_deterministic(self):
        assert derive_seed(42, 3, 7) == derive_seed(42, 3, 7)

    def test_derive_seed_separates_trials_and_dims(self):
        seeds = {derive_seed(42, dim, trial) for dim in (2, 3) for trial in range(50)}
        assert len(seeds) == 100
        assert all(0 <= s <= SEED_MASK for s in seeds)

    def test_split_seed_children_differ(self):
        children = [split_seed(123, k) for k in range(10)]
        assert len(set(children)) == 10

    @pytest.mark.parametrize("seed", [-1, SEED_MASK + 1])
    def test_seed_out_of_range(self, seed):
        with pytest.raises(InvalidInput):
            derive_seed(seed, 2, 0)

    def test_competitor_seeds(self):
        assert competitor_seeds(99, 2) == [split_seed(99, 2), split_seed(99, 3)]
        assert competitor_seeds(99, 0) == []


class TestStandardNormals:
    def test_odd_size(self):
        assert standard_normals(rng_from_seed(1), 7).shape == (7,)

    def test_deterministic(self):
        first = standard_normals(rng_from_seed(5), 10)
        second = standard_normals(rng_from_seed(5), 10)
        assert np.array_equal(first, second)

    def test_moments(self):
        values = standard_normals(rng_from_seed(2024), 20000)
        assert abs(float(np.mean(values))) < 0.05
        assert abs(float(np.var(values)) - 1.0) < 0.05
        assert np.all(np.isfinite(values))


class TestRandomPsd:
    @pytest.mark.edge_case
    def test_one_by_one(self, rng_seed):
        a = random_psd(1, 1, rng_seed)
        assert a.dim == 1
        assert a.entries[0, 0].real >= 0.0

    def test_bit_identical(self, rng_seed):
        assert np.array_equal(random_psd(4, 3, rng_seed).entries, random_psd(4, 3, rng_seed).entries)

    def test_rank(self, rng_seed):
        a = random_psd(5, 2, rng_seed)
        decomposition = eig_hermitian(a)
        threshold = ToleranceModel().effective(decomposition.spectral_norm)
        assert int(np.count_nonzero(decomposition.eigenvalues > threshold)) == 2

    @pytest.mark.parametrize("rank", [0, 6])
    def test_rank_out_of_range(self, rank):
        with pytest.raises(InvalidInput):
            random_psd(5, rank, 1)

    def test_invalid_dimension(self):
        with pytest.raises(InvalidInput):
            random_psd(0, 1, 1)


class TestStates:
    def test_density_trace(self, rng_seed):
        rho = random_density(4, rng_seed)
        assert rho.trace() == pytest.approx(1.0, abs=1e-12)
        assert float(np.sum(eig_hermitian(rho).eigenvalues)) == pytest.approx(1.0, abs=1e-10)
        assert is_psd(rho)

    @pytest.mark.edge_case
    def test_density_one_by_one(self, rng_seed):
        assert random_density(1, rng_seed).entries[0, 0].real == pytest.approx(1.0, abs=1e-15)

    def test_pure_state_is_rank_one_projector(self, rng_seed):
        rho = random_pure_state(3, rng_seed)
        assert rho.trace() == pytest.approx(1.0, abs=1e-12)
        assert np.linalg.norm(rho.entries @ rho.entries - rho.entries) <= 1e-12
        assert np.allclose(eig_hermitian(rho).eigenvalues, [1.0, 0.0, 0.0], atol=1e-12)

    def test_random_unitary(self, rng_seed):
        u = random_unitary(5, rng_seed)
        assert np.linalg.norm(u.conj().T @ u - np.eye(5)) <= 1e-12


class TestPairs:
    def test_commuting_pair(self, rng_seed):
        a, b = random_commuting_pair(4, rng_seed)
        bound = 1e-10 * eig_hermitian(a).spectral_norm * eig_hermitian(b).spectral_norm
        assert a.commutator_norm(b) <= bound
        assert is_psd(a) and is_psd(b)

    def test_dominated_competitor(self, rng_seed):
        a, b = generate_pair(EnsembleSpec.parse("dominated"), 4, rng_seed)
        for seed in competitor_seeds(rng_seed, 5):
            t = random_dominated(a, b, seed)
            assert is_psd(a - t)
            assert is_psd(b - t)

    def test_dominated_by_identity(self, rng_seed):
        identity = HermitianMatrix.identity(3)
        t = random_dominated(identity, identity, rng_seed)
        assert eig_hermitian(t).lambda_max <= 1.0 + 1e-12


class TestEnsembleSpec:
    def test_parse(self):
        spec = EnsembleSpec.parse("gram:2")
        assert spec.kind is EnsembleKind.GRAM
        assert spec.rank == 2
        assert spec.label == "gram:2"

    @pytest.mark.parametrize("text", ["foo", "density:2", "gram:0", "gram:x"])
    def test_parse_rejects(self, text):
        with pytest.raises(InvalidInput):
            EnsembleSpec.parse(text)

    def test_default_labels(self):
        assert [e.label for e in DEFAULT_ENSEMBLES] == ["gram", "gram:2", "density", "pure", "commuting", "dominated"]

    def test_gram_rank_is_clamped(self, rng_seed):
        a, _ = generate_pair(EnsembleSpec.parse("gram:5"), 3, rng_seed)
        assert np.array_equal(a.entries, random_psd(3, 3, split_seed(rng_seed, 0)).entries)

    def test_dominated_pair_has_singular_b(self, rng_seed):
        a, b = generate_pair(EnsembleSpec.parse("dominated"), 4, rng_seed)
        threshold = ToleranceModel().effective(eig_hermitian(b).spectral_norm)
        assert int(np.count_nonzero(eig_hermitian(b).eigenvalues > threshold)) == 3
        assert np.array_equal(a.entries, random_psd(4, 4, split_seed(rng_seed, 0)).entries)

    @pytest.mark.parametrize("ensemble", DEFAULT_ENSEMBLES, ids=lambda e: e.label)
    def test_every_ensemble_is_psd_and_reproducible(self, rng_seed, ensemble):
        a, b = generate_pair(ensemble, 3, rng_seed)
        again_a, again_b = generate_pair(ensemble, 3, rng_seed)
        assert is_psd(a) and is_psd(b)
        assert np.array_equal(a.entries, again_a.entries)
        assert np.array_equal(b.entries, again_b.entries)
