"""Utility functions for configuration management."""

from pathlib import Path

import platformdirs

APP_NAME = "powerstormer"


def get_config_dir() -> Path:
    """Platform-specific user configuration directory for powerstormer."""
    return Path(platformdirs.user_config_dir(appname=APP_NAME, appauthor=APP_NAME))


def get_config_path() -> Path:
    """Path of the user configuration file inside ``get_config_dir()``."""
    return get_config_dir() / "config.yaml"
