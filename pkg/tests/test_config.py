"""Tests for the configuration loader."""

import logging
import os
import tempfile

import pytest

from toric_billiards.config import DEFAULT_CONFIG_FILE, Config
from toric_billiards.constants import EnumerationDefaults, RenderDefaults
from toric_billiards.exceptions import ConfigurationError
from toric_billiards.render import RenderOptions


def _write_temp_config(content: str) -> str:
    with tempfile.NamedTemporaryFile(
        mode="w", suffix=".yaml", delete=False
    ) as f:
        f.write(content)
        return f.name


def test_config_loading():
    config_path = _write_temp_config(
        """
enumeration:
  max_n: 7
  threads: 4
verification:
  seed: 42
render:
  colors:
    reflect: "#000000"
"""
    )
    try:
        config = Config(config_path)
        assert config.max_n == 7
        assert config.threads == 4
        assert config.seed == 42
        assert config.color_reflect == "#000000"
    finally:
        os.unlink(config_path)


def test_config_defaults():
    config = Config(None)
    assert config.max_n == EnumerationDefaults.MAX_N
    assert config.threads == 1
    assert config.render_width == RenderDefaults.WIDTH
    assert config.log_level == "WARNING"


def test_empty_file_uses_defaults():
    config_path = _write_temp_config("")
    try:
        assert Config(config_path).strip_cap == RenderDefaults.STRIP_CAP
    finally:
        os.unlink(config_path)


def test_config_file_not_found():
    with pytest.raises(ConfigurationError):
        Config("nonexistent.yaml")


def test_invalid_yaml():
    config_path = _write_temp_config("enumeration: [unclosed")
    try:
        with pytest.raises(ConfigurationError):
            Config(config_path)
    finally:
        os.unlink(config_path)


def test_top_level_must_be_mapping():
    config_path = _write_temp_config("- 1\n- 2\n")
    try:
        with pytest.raises(ConfigurationError):
            Config(config_path)
    finally:
        os.unlink(config_path)


@pytest.mark.parametrize(
    "content",
    [
        "enumeration:\n  max_n: 2\n",
        "enumeration:\n  threads: 0\n",
        "enumeration:\n  power_threshold: 0\n",
        "render:\n  width: -5\n",
        "render:\n  strip_cap: 0\n",
    ],
)
def test_unusable_values_raise(content):
    config_path = _write_temp_config(content)
    try:
        with pytest.raises(ConfigurationError):
            Config(config_path)
    finally:
        os.unlink(config_path)


def test_soft_problems_are_warnings(caplog):
    config_path = _write_temp_config(
        "enumeration:\n  max_n: 11\nlogging:\n  level: LOUD\n"
    )
    try:
        with caplog.at_level(logging.WARNING):
            config = Config(config_path)
        assert config.max_n == 11
        assert "exceeds the tested limit" in caplog.text
        assert "Invalid log level" in caplog.text
    finally:
        os.unlink(config_path)


def test_get_method_with_dot_notation():
    config_path = _write_temp_config(
        """
render:
  colors:
    window: "#abcdef"
"""
    )
    try:
        config = Config(config_path)
        assert config.get("render.colors.window") == "#abcdef"
        assert config.get("render.colors.missing", "x") == "x"
        assert config.get("nothing.here") is None
    finally:
        os.unlink(config_path)


def test_bad_type_falls_back_to_default():
    config_path = _write_temp_config("verification:\n  samples: lots\n")
    try:
        config = Config(config_path)
        assert config.samples == 1000
    finally:
        os.unlink(config_path)


def test_override_ignores_none():
    config = Config(None)
    config.override(threads=3, seed=None)
    assert config.threads == 3
    assert config.seed == Config(None).seed


def test_override_unknown_setting():
    with pytest.raises(ConfigurationError):
        Config(None).override(colour="red")


def test_unknown_attribute():
    with pytest.raises(AttributeError):
        Config(None).not_a_setting


def test_reload_clears_overrides():
    config_path = _write_temp_config("enumeration:\n  threads: 2\n")
    try:
        config = Config(config_path)
        config.override(threads=8)
        config.reload()
        assert config.threads == 2
    finally:
        os.unlink(config_path)


def test_discover_prefers_local_file(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert Config.discover().config_path is None
    (tmp_path / DEFAULT_CONFIG_FILE).write_text("verification:\n  seed: 7\n")
    config = Config.discover()
    assert config.config_path == DEFAULT_CONFIG_FILE
    assert config.seed == 7


def test_render_options_from_config():
    config_path = _write_temp_config(
        "render:\n  width: 120\n  show_labels: no\n"
    )
    try:
        opts = RenderOptions.from_config(Config(config_path))
        assert opts.width == 120
        assert opts.show_labels is False
    finally:
        os.unlink(config_path)


def test_to_dict_lists_every_setting():
    values = Config(None).to_dict()
    assert values["max_n"] == EnumerationDefaults.MAX_N
    assert "color_refract" in values
