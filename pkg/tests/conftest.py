"""Pytest configuration file."""

import logging
from unittest.mock import patch

import pytest

from powerstormer.config import ConfigManager
from powerstormer.linalg import HermitianMatrix
from powerstormer.randgen import random_density, random_psd, split_seed
from powerstormer.tolerance import ToleranceModel

ENV_VARS = (
    "POWERSTORMER_SEED",
    "POWERSTORMER_TOL_REL",
    "POWERSTORMER_TOL_ABS",
    "POWERSTORMER_LOG_LEVEL",
    "POWERSTORMER_EVENTS_FILE",
)


@pytest.fixture(autouse=True)
def disable_logging():
    """Disable logging during tests."""
    logging.disable(logging.CRITICAL)
    yield
    logging.disable(logging.NOTSET)


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Point the ConfigManager at an empty temporary config directory."""
    config_dir = tmp_path / "powerstormer-config"
    for name in ENV_VARS:
        monkeypatch.delenv(name, raising=False)
    monkeypatch.chdir(tmp_path)

    with patch("powerstormer.config.utils.platformdirs.user_config_dir") as mock_dir:
        mock_dir.return_value = str(config_dir)
        ConfigManager.reset_instance()
        yield config_dir
        ConfigManager.reset_instance()


@pytest.fixture
def rng_seed():
    """Fixed seed for reproducible random matrices."""
    return 20240101


@pytest.fixture
def tolerance():
    """Tolerance used by the harness."""
    return ToleranceModel(rel=1e-8, abs=1e-12)


@pytest.fixture
def psd_pair(rng_seed):
    """Seeded full-rank 4x4 Gram pair."""
    return random_psd(4, 4, split_seed(rng_seed, 0)), random_psd(4, 4, split_seed(rng_seed, 1))


@pytest.fixture
def density_pair(rng_seed):
    """Seeded 3x3 density matrices."""
    return random_density(3, split_seed(rng_seed, 2)), random_density(3, split_seed(rng_seed, 3))


@pytest.fixture
def golden_matrix():
    """[[1, 1], [1, 0]], eigenvalues (1 +- sqrt 5) / 2."""
    return HermitianMatrix([[1, 1], [1, 0]])
