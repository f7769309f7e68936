"""
Configuration loading.

The configuration lives in `config.yaml` at the repository root. Every key is
optional: values missing from the file fall back to `DEFAULT_CONFIG`.
"""

import copy
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml

from berry_esseen.core.errors import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG: Dict[str, Any] = {
    "logging": {
        "level": "INFO",
        "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    },
    "oracle": {
        "support_cap": 2 ** 24,
        "max_cumulant_order": 12,
        "warn_cumulant_order": 8,
    },
    "quadrature": {
        "epsabs": 1e-9,
        "limit": 10_000,
        "small_s_cutoff": 1e-4,
    },
    "montecarlo": {
        "n_samples": 1_000_000,
        "confidence": 0.99,
        "chunk_size": 65_536,
        "threads": 1,
    },
    "regimes": {
        "delta_min": 2.0,
        "delta_max": 10.0,
        "delta_step": 0.02,
        "alpha_min": 0.0,
        "alpha_max": 0.1,
        "alpha_step": 0.001,
    },
    "trend": {
        "slope_threshold": -0.05,
    },
    "ustat": {
        "enumeration_cap": 10_000_000,
    },
}


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(path: Optional[Union[str, Path]] = "config.yaml") -> Dict[str, Any]:
    """
    Loads the YAML configuration and merges it over the defaults.

    Args:
        path (Optional[Union[str, Path]]): Location of the YAML file. `None`
            returns a copy of the defaults.

    Returns:
        Dict[str, Any]: The merged configuration.

    Raises:
        ConfigError: If the file does not exist, cannot be parsed, or does not
            hold a mapping at the top level.
    """
    if path is None:
        return copy.deepcopy(DEFAULT_CONFIG)

    config_path = Path(path)
    if not config_path.is_file():
        raise ConfigError(f"Configuration file not found: {config_path}")

    try:
        with config_path.open("r", encoding="utf-8") as handle:
            loaded = yaml.safe_load(handle)
    except yaml.YAMLError as e:
        raise ConfigError(f"Could not parse configuration file {config_path}: {e}") from e

    if loaded is None:
        loaded = {}
    if not isinstance(loaded, dict):
        raise ConfigError(f"Configuration file {config_path} must contain a mapping.")

    logger.debug(f"Loaded configuration from {config_path}")
    return _merge(DEFAULT_CONFIG, loaded)
