"""Logging configuration for qcaveat."""

import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path

from qcaveat.config.defaults import (
    DEFAULT_LOG_BACKUP_COUNT,
    DEFAULT_LOG_LEVEL,
    DEFAULT_LOG_MAX_SIZE_MB,
)

ROOT_LOGGER_NAME = "qcaveat"

# Global logger cache
_loggers: dict[str, logging.Logger] = {}
_initialized = False


def setup_logging(
    level: str = DEFAULT_LOG_LEVEL,
    log_file: Path | None = None,
    max_size_mb: int = DEFAULT_LOG_MAX_SIZE_MB,
    backup_count: int = DEFAULT_LOG_BACKUP_COUNT,
) -> None:
    """
    Set up logging configuration.

    Args:
        level: Log level (DEBUG, INFO, WARNING, ERROR, CRITICAL).
        log_file: Path to a rotating log file. If None, only stderr is used.
        max_size_mb: Maximum log file size in MB before rotation.
        backup_count: Number of backup files to keep.
    """
    global _initialized

    if _initialized:
        return

    root_logger = logging.getLogger(ROOT_LOGGER_NAME)
    root_logger.setLevel(getattr(logging, level.upper()))

    # Console handler; stdout is reserved for reports
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(
        logging.DEBUG if level.upper() == "DEBUG" else logging.WARNING
    )
    console_handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    root_logger.addHandler(console_handler)

    _initialized = True

    if log_file is not None:
        add_log_file(log_file, level, max_size_mb, backup_count)


def add_log_file(
    log_file: Path,
    level: str = DEFAULT_LOG_LEVEL,
    max_size_mb: int = DEFAULT_LOG_MAX_SIZE_MB,
    backup_count: int = DEFAULT_LOG_BACKUP_COUNT,
) -> None:
    """Attach a rotating file handler to the qcaveat logger, once per path."""
    root_logger = logging.getLogger(ROOT_LOGGER_NAME)
    target = str(log_file.resolve())
    for handler in root_logger.handlers:
        if isinstance(handler, RotatingFileHandler) and handler.baseFilename == target:
            return

    log_file.parent.mkdir(parents=True, exist_ok=True)
    file_handler = RotatingFileHandler(
        log_file,
        maxBytes=max_size_mb * 1024 * 1024,
        backupCount=backup_count,
        encoding="utf-8",
    )
    file_handler.setLevel(getattr(logging, level.upper()))
    file_handler.setFormatter(
        logging.Formatter(
            "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
        )
    )
    root_logger.addHandler(file_handler)


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger instance.

    Args:
        name: Logger name (typically __name__).

    Returns:
        Logger instance.
    """
    if name not in _loggers:
        if not _initialized:
            setup_logging()

        logger = logging.getLogger(
            name if name.startswith(ROOT_LOGGER_NAME) else f"{ROOT_LOGGER_NAME}.{name}"
        )
        _loggers[name] = logger

    return _loggers[name]


def set_log_level(level: str) -> None:
    """Set the log level for all qcaveat loggers."""
    numeric = getattr(logging, level.upper())
    root_logger = logging.getLogger(ROOT_LOGGER_NAME)
    root_logger.setLevel(numeric)

    for handler in root_logger.handlers:
        if isinstance(handler, logging.FileHandler):
            handler.setLevel(numeric)
        elif isinstance(handler, logging.StreamHandler):
            handler.setLevel(logging.DEBUG if numeric <= logging.DEBUG else logging.WARNING)
