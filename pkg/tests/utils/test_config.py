"""
Unit tests for configuration loading.
"""

from pathlib import Path

import pytest

from berry_esseen.core.errors import ConfigError
from berry_esseen.utils.config import DEFAULT_CONFIG, load_config

REPO_CONFIG = Path(__file__).resolve().parents[2] / "config.yaml"


def test_none_returns_defaults():
    """Test that no path gives a private copy of the defaults."""
    config = load_config(None)
    assert config == DEFAULT_CONFIG
    config["montecarlo"]["threads"] = 8
    assert DEFAULT_CONFIG["montecarlo"]["threads"] == 1


def test_repository_config_matches_defaults():
    """Test that the shipped config.yaml restates the defaults."""
    assert load_config(REPO_CONFIG) == DEFAULT_CONFIG


def test_partial_file_is_merged(tmp_path):
    """Test that missing keys fall back to the defaults."""
    path = tmp_path / "config.yaml"
    path.write_text("montecarlo:\n  threads: 4\nlogging:\n  level: DEBUG\n", encoding="utf-8")
    config = load_config(path)
    assert config["montecarlo"]["threads"] == 4
    assert config["montecarlo"]["n_samples"] == 1_000_000
    assert config["logging"]["level"] == "DEBUG"
    assert config["oracle"] == DEFAULT_CONFIG["oracle"]


def test_empty_file_gives_defaults(tmp_path):
    """Test that an empty file is an empty override."""
    path = tmp_path / "config.yaml"
    path.write_text("", encoding="utf-8")
    assert load_config(path) == DEFAULT_CONFIG


def test_missing_file(tmp_path):
    """Test that a missing file is reported."""
    with pytest.raises(ConfigError, match="Configuration file not found"):
        load_config(tmp_path / "absent.yaml")


def test_malformed_file(tmp_path):
    """Test that YAML syntax errors are reported."""
    path = tmp_path / "config.yaml"
    path.write_text("montecarlo: [1, 2\n", encoding="utf-8")
    with pytest.raises(ConfigError, match="Could not parse"):
        load_config(path)


def test_non_mapping_file(tmp_path):
    """Test that a top-level list is refused."""
    path = tmp_path / "config.yaml"
    path.write_text("- 1\n- 2\n", encoding="utf-8")
    with pytest.raises(ConfigError, match="must contain a mapping"):
        load_config(path)


def test_config_error_is_value_error():
    """Test that configuration errors stay catchable as ValueError."""
    assert issubclass(ConfigError, ValueError)
