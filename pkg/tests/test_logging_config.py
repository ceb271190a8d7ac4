"""Tests for the package logging setup"""

import logging
from types import SimpleNamespace

import pytest

from toric_billiards.logging_config import (
    PACKAGE_LOGGER,
    LoggerMixin,
    log_exception,
    parse_level,
    setup_logging_from_config,
)
from toric_billiards.verification import VerificationRunner


def _settings(tmp_path, **values):
    defaults = {
        "log_level": "WARNING",
        "log_path": str(tmp_path / "logs" / "run.log"),
        "log_file_output": False,
        "log_max_size_mb": 1,
        "log_backup_count": 1,
    }
    defaults.update(values)
    return SimpleNamespace(**defaults)


@pytest.fixture(autouse=True)
def restore_package_logger():
    package = logging.getLogger(PACKAGE_LOGGER)
    level = package.level
    yield
    for handler in list(package.handlers):
        package.removeHandler(handler)
        handler.close()
    package.setLevel(level)


@pytest.mark.parametrize(
    "name,level",
    [
        ("debug", logging.DEBUG),
        ("INFO", logging.INFO),
        (None, logging.WARNING),
        ("chatty", logging.WARNING),
    ],
)
def test_parse_level(name, level):
    assert parse_level(name) == level


def test_override_wins_over_file(tmp_path):
    package = setup_logging_from_config(_settings(tmp_path), "debug")
    assert package.name == PACKAGE_LOGGER
    assert package.level == logging.DEBUG


def test_repeated_setup_keeps_one_console_handler(tmp_path):
    setup_logging_from_config(_settings(tmp_path))
    package = setup_logging_from_config(_settings(tmp_path))
    assert len(package.handlers) == 1


def test_file_output_creates_log(tmp_path):
    settings = _settings(tmp_path, log_file_output=True, log_level="INFO")
    package = setup_logging_from_config(settings)
    logging.getLogger(f"{PACKAGE_LOGGER}.dynamics").info("orbit done")
    for handler in package.handlers:
        handler.flush()
    text = (tmp_path / "logs" / "run.log").read_text()
    assert "orbit done" in text
    assert "toric_billiards.dynamics" in text


def test_logger_mixin_name():
    class Walker(LoggerMixin):
        pass

    assert Walker().logger.name.endswith("test_logging_config.Walker")
    runner = VerificationRunner()
    assert runner.logger.name == (
        "toric_billiards.verification.VerificationRunner"
    )


def test_log_exception_keeps_traceback(caplog):
    logger = logging.getLogger(f"{PACKAGE_LOGGER}.cli")
    try:
        raise RuntimeError("table went missing")
    except RuntimeError as e:
        with caplog.at_level(logging.ERROR):
            log_exception(logger, "orbit failed", e)
    (record,) = caplog.records
    assert record.getMessage() == (
        "orbit failed: RuntimeError: table went missing"
    )
    assert record.exc_info is not None
