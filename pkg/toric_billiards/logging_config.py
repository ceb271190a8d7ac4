"""
Logging Configuration

Log records from the package go to stderr so JSON reports on stdout stay
machine-readable. A rotating log file can be switched on from the config.
"""

import logging
import sys
from logging.handlers import RotatingFileHandler
from typing import Optional

from .path_utils import ensure_parent_dir

PACKAGE_LOGGER = "toric_billiards"

FILE_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
CONSOLE_FORMAT = "[%(levelname)s] %(name)s: %(message)s"


def parse_level(name: Optional[str]) -> int:
    """Numeric level for a name like ``"info"``; WARNING if unknown."""
    level = logging.getLevelName(str(name or "WARNING").upper())
    return level if isinstance(level, int) else logging.WARNING


def setup_logging_from_config(
    config, level_override: Optional[str] = None
) -> logging.Logger:
    """
    Attach handlers to the package logger from the ``logging`` section.

    Handlers from an earlier call are replaced, so repeated command runs
    in one process do not duplicate output.

    Args:
        config: Config object with the logging settings
        level_override: Level from ``--log-level``, wins over the file

    Returns:
        The package logger
    """
    level = parse_level(level_override or config.log_level)
    package = logging.getLogger(PACKAGE_LOGGER)
    package.setLevel(level)
    for handler in list(package.handlers):
        package.removeHandler(handler)
        handler.close()

    console = logging.StreamHandler(sys.stderr)
    console.setFormatter(logging.Formatter(CONSOLE_FORMAT))
    package.addHandler(console)

    if config.log_file_output:
        path = ensure_parent_dir(config.log_path)
        rotating = RotatingFileHandler(
            path,
            maxBytes=config.log_max_size_mb * 1024 * 1024,
            backupCount=config.log_backup_count,
            encoding="utf-8",
        )
        rotating.setFormatter(logging.Formatter(FILE_FORMAT))
        package.addHandler(rotating)

    package.debug(
        "Logging at %s, file %s",
        logging.getLevelName(level),
        config.log_path if config.log_file_output else "off",
    )
    return package


class LoggerMixin:
    """Gives a class a ``logger`` named after its module and class"""

    @property
    def logger(self) -> logging.Logger:
        if not hasattr(self, "_logger"):
            cls = type(self)
            self._logger = logging.getLogger(
                f"{cls.__module__}.{cls.__name__}"
            )
        return self._logger


def log_exception(
    logger: logging.Logger, message: str, exc: BaseException
) -> None:
    """Log exc with its traceback under a one-line context message."""
    logger.error(
        "%s: %s: %s", message, type(exc).__name__, exc, exc_info=exc
    )
