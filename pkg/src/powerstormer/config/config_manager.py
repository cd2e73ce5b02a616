"""Configuration manager for powerstormer."""

import copy
import importlib.resources
import logging
import os
import shutil
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Union

import yaml
from dotenv import load_dotenv

from powerstormer.config.utils import get_config_dir, get_config_path
from powerstormer.exceptions import ConfigError

logger = logging.getLogger("PowerStormer.Config")

# Environment variable -> (dotted key, converter)
ENV_OVERRIDES: Dict[str, tuple[str, Callable[[str], Any]]] = {
    "POWERSTORMER_SEED": ("campaign.master_seed", int),
    "POWERSTORMER_TOL_REL": ("tolerances.rel", float),
    "POWERSTORMER_TOL_ABS": ("tolerances.abs", float),
    "POWERSTORMER_LOG_LEVEL": ("logging.level", str),
    "POWERSTORMER_EVENTS_FILE": ("logging.events_file", str),
}


def deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    """Recursively merge ``override`` into a copy of ``base``."""
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = deep_merge(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def _read_yaml(source: Union[Path, str], text: str) -> Dict[str, Any]:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ConfigError(f"Invalid YAML in {source}: {e}") from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"Configuration in {source} must be a mapping")
    return data


class ConfigManager:
    """
    Layered configuration for powerstormer.

    Layers, lowest precedence first: the packaged ``default_config.yaml``,
    the user file in the platform config directory (if present), an explicit
    file passed to ``load_file``, and ``POWERSTORMER_*`` environment variables
    (a ``.env`` file in the working directory is read first). Command-line
    flags are applied on top by the caller.
    """

    _instance: Optional["ConfigManager"] = None
    _config: Dict[str, Any] = {}

    def __new__(cls) -> "ConfigManager":
        """Implement the singleton pattern."""
        if cls._instance is None:
            cls._instance = super(ConfigManager, cls).__new__(cls)
            cls._instance._initialize()
        return cls._instance

    @classmethod
    def reset_instance(cls) -> None:
        """Drop the singleton so the next construction reloads every layer."""
        cls._instance = None

    def _initialize(self) -> None:
        self._config_dir = get_config_dir()
        self._config_path = get_config_path()
        self._extra_path: Optional[Path] = None
        self._load_config()

    @staticmethod
    def load_defaults() -> Dict[str, Any]:
        """The packaged default configuration."""
        text = (
            importlib.resources.files("powerstormer.config")
            .joinpath("default_config.yaml")
            .read_text(encoding="utf-8")
        )
        return _read_yaml("default_config.yaml", text)

    def _read_file(self, path: Path) -> Dict[str, Any]:
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"Cannot read configuration file {path}: {e}") from e
        return _read_yaml(path, text)

    def _apply_environment(self, config: Dict[str, Any]) -> Dict[str, Any]:
        load_dotenv(dotenv_path=Path.cwd() / ".env", override=False)
        for name, (key, convert) in ENV_OVERRIDES.items():
            raw = os.environ.get(name)
            if raw is None or raw == "":
                continue
            try:
                value = convert(raw)
            except ValueError as e:
                raise ConfigError(f"Invalid value for {name}: {raw!r}") from e
            config = deep_merge(config, _nest(key, value))
            logger.debug(f"Environment override {name} -> {key}")
        return config

    def _load_config(self) -> None:
        config = self.load_defaults()
        if self._config_path.exists():
            config = deep_merge(config, self._read_file(self._config_path))
            logger.debug(f"Configuration loaded from {self._config_path}")
        if self._extra_path is not None:
            config = deep_merge(config, self._read_file(self._extra_path))
            logger.debug(f"Configuration loaded from {self._extra_path}")
        self._config = self._apply_environment(config)

    def load_file(self, path: Union[str, Path]) -> None:
        """Layer an explicit YAML file above the user configuration.

        Raises:
            ConfigError: The file is missing, unreadable, or not a YAML mapping.
        """
        path = Path(path)
        if not path.is_file():
            raise ConfigError(f"Configuration file not found: {path}")
        self._extra_path = path
        self._load_config()

    def ensure_user_config(self) -> Path:
        """Copy the packaged defaults to the user configuration path if it does not exist."""
        if not self._config_path.exists():
            logger.info(f"Creating user configuration at {self._config_path}")
            os.makedirs(self._config_dir, exist_ok=True)
            try:
                with (
                    importlib.resources.files("powerstormer.config")
                    .joinpath("default_config.yaml")
                    .open("rb") as default_file
                ):
                    with open(self._config_path, "wb") as target_file:
                        shutil.copyfileobj(default_file, target_file)
            except OSError as e:
                raise ConfigError(f"Failed to create {self._config_path}: {e}") from e
        return self._config_path

    def save_config(self) -> None:
        """Write the current configuration to the user configuration path."""
        try:
            os.makedirs(self._config_dir, exist_ok=True)
            with open(self._config_path, "w", encoding="utf-8") as f:
                yaml.safe_dump(self._config, f, default_flow_style=False, sort_keys=False)
            logger.info(f"Configuration saved to {self._config_path}")
        except OSError as e:
            raise ConfigError(f"Failed to save configuration: {e}") from e

    def get_config_path(self) -> Path:
        """Get the path to the user configuration file."""
        return self._config_path

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get a configuration value by key.

        Args:
            key: Dot-separated path (e.g., "campaign.dims")
            default: Returned when the key is not found
        """
        value: Any = self._config
        for k in key.split("."):
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default
        return value

    def set(self, key: str, value: Any) -> None:
        """Set a value in memory (dot-separated key); ``save_config`` persists it."""
        self._config = deep_merge(self._config, _nest(key, value))

    def as_dict(self) -> Dict[str, Any]:
        return copy.deepcopy(self._config)

    def reload(self) -> None:
        """Re-read every layer."""
        self._load_config()


def _nest(key: str, value: Any) -> Dict[str, Any]:
    nested: Dict[str, Any] = {}
    node = nested
    parts = key.split(".")
    for part in parts[:-1]:
        node[part] = {}
        node = node[part]
    node[parts[-1]] = value
    return nested
