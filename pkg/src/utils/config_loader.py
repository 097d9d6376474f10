"""
Configuration loader for the FluxMap toolkit.

Layers, lowest priority first: built-in defaults, the YAML file, ``FLUXMAP_``
environment variables (a ``.env`` file is honoured), then explicit overrides
set by the command line.
"""

import copy
import os
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv

from .errors import ConfigError

ENV_PREFIX = 'FLUXMAP_'
ENV_SEPARATOR = '__'

DEFAULTS: Dict[str, Any] = {
    'mapping': {
        'k': 4,
        'max_passes': 8,
        'cut_limit': 64,
        'use_maj': True,
        'use_xor': True,
        'complement_covers': False,
        'global_guard': True,
        'sweep_k': True,
    },
    'postprocess': {
        'merge_replace': True,
    },
    'verification': {
        'enabled': True,
        'vectors': 10000,
        'seed': 2023,
        'exhaustive_limit': 12,
    },
    'cell_library': {},
    'output': {
        'directory': 'data/output',
        'json': False,
    },
    'logging': {
        'file': 'logs/fluxmap.log',
        'level': 'INFO',
    },
}


def _deep_merge(base: Dict[str, Any], update: Dict[str, Any]) -> Dict[str, Any]:
    for key, value in update.items():
        if isinstance(value, dict) and isinstance(base.get(key), dict):
            _deep_merge(base[key], value)
        else:
            base[key] = value
    return base


class ConfigLoader:
    """
    Load and manage configuration from defaults, YAML and environment variables.

    Example:
        >>> config = ConfigLoader('config/config.yaml')
        >>> config.get('mapping.k')
        4
    """

    def __init__(self, config_path: Optional[str] = None, env_path: Optional[str] = None):
        """
        Initialize the configuration loader.

        Args:
            config_path: Path to YAML configuration file (optional)
            env_path: Path to .env file (default: nearest .env upwards from cwd)

        Raises:
            ConfigError: If the config file is missing or is not a YAML mapping
        """
        self.config: Dict[str, Any] = copy.deepcopy(DEFAULTS)

        if env_path:
            load_dotenv(env_path)
        else:
            current_dir = Path.cwd()
            for parent in [current_dir] + list(current_dir.parents):
                env_file = parent / '.env'
                if env_file.exists():
                    load_dotenv(env_file)
                    break

        if config_path:
            self._load_yaml_config(config_path)

        self._load_env_overrides()

    def _load_yaml_config(self, config_path: str) -> None:
        config_file = Path(config_path)

        if not config_file.exists():
            raise ConfigError(f"Configuration file not found: {config_path}")

        try:
            with open(config_file, 'r', encoding='utf-8') as f:
                loaded = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigError(f"Invalid YAML in {config_path}: {e}") from e

        if not isinstance(loaded, dict):
            raise ConfigError(f"Configuration root must be a mapping: {config_path}")

        _deep_merge(self.config, loaded)

    def _load_env_overrides(self) -> None:
        """
        Apply FLUXMAP_ environment overrides.

        Nesting uses a double underscore so keys may contain single ones:
        FLUXMAP_MAPPING__MAX_PASSES=4 sets mapping.max_passes.
        """
        for key, value in os.environ.items():
            if not key.startswith(ENV_PREFIX) or key == 'FLUXMAP_LOG_LEVEL':
                continue
            parts = key[len(ENV_PREFIX):].lower().split(ENV_SEPARATOR)
            self.set('.'.join(parts), self._convert_value(value))

    @staticmethod
    def _convert_value(value: str) -> Any:
        lowered = value.lower()
        if lowered in ('true', 'yes', 'on'):
            return True
        if lowered in ('false', 'no', 'off'):
            return False

        try:
            if '.' in value:
                return float(value)
            return int(value)
        except ValueError:
            return value

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get configuration value using dot notation.

        Example:
            >>> config.get('verification.seed', 0)
        """
        current: Any = self.config
        for part in key.split('.'):
            if isinstance(current, dict) and part in current:
                current = current[part]
            else:
                return default
        return current

    def get_required(self, key: str) -> Any:
        value = self.get(key)
        if value is None:
            raise ConfigError(f"Required configuration key not found: {key}")
        return value

    def set(self, key: str, value: Any) -> None:
        """Set a value using dot notation, creating intermediate sections."""
        parts = key.split('.')
        current = self.config
        for part in parts[:-1]:
            if not isinstance(current.get(part), dict):
                current[part] = {}
            current = current[part]
        current[parts[-1]] = value

    def section(self, key: str) -> Dict[str, Any]:
        """Return a copy of a whole section (empty dict when absent)."""
        value = self.get(key, {})
        return dict(value) if isinstance(value, dict) else {}
