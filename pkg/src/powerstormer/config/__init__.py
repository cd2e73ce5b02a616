"""Configuration management for powerstormer."""

from powerstormer.config.config_manager import ConfigManager, deep_merge
from powerstormer.config.utils import get_config_dir, get_config_path

__all__ = ["ConfigManager", "deep_merge", "get_config_dir", "get_config_path"]
