"""Tests for logging utility module."""

import logging
from logging.handlers import RotatingFileHandler

import pytest

import qcaveat.utils.logging as logging_module
from qcaveat.utils.logging import add_log_file, get_logger, set_log_level, setup_logging


@pytest.fixture(autouse=True)
def reset_logging_state():
    """Reset module state before each test."""
    root = logging.getLogger("qcaveat")
    saved = (logging_module._initialized, dict(logging_module._loggers), root.handlers[:])
    logging_module._initialized = False
    logging_module._loggers.clear()
    root.handlers = []
    yield
    for handler in root.handlers:
        handler.close()
    logging_module._initialized, loggers, root.handlers = saved
    logging_module._loggers.clear()
    logging_module._loggers.update(loggers)


class TestSetupLogging:
    """Tests for setup_logging function."""

    def test_setup_logging_initializes(self):
        """Test that setup_logging initializes logging."""
        setup_logging()
        assert logging_module._initialized is True

    def test_console_handler_at_warning(self):
        """Test the stderr handler only shows warnings by default."""
        setup_logging(level="INFO")
        handlers = logging.getLogger("qcaveat").handlers
        assert len(handlers) == 1
        assert handlers[0].level == logging.WARNING

    def test_creates_file_handler(self, tmp_path):
        """Test that a log file adds a rotating handler."""
        log_file = tmp_path / "logs" / "qcaveat.log"
        setup_logging(log_file=log_file)

        handlers = logging.getLogger("qcaveat").handlers
        assert any(isinstance(h, RotatingFileHandler) for h in handlers)
        assert log_file.parent.exists()

    def test_skips_if_initialized(self):
        """Test that setup_logging doesn't reinitialize."""
        setup_logging()
        count = len(logging.getLogger("qcaveat").handlers)
        setup_logging()
        assert len(logging.getLogger("qcaveat").handlers) == count


class TestAddLogFile:
    """Tests for add_log_file."""

    def test_same_path_added_once(self, tmp_path):
        """Test the handler is not duplicated."""
        log_file = tmp_path / "run.log"
        add_log_file(log_file)
        add_log_file(log_file)
        handlers = [
            h for h in logging.getLogger("qcaveat").handlers if isinstance(h, RotatingFileHandler)
        ]
        assert len(handlers) == 1

    def test_messages_reach_file(self, tmp_path):
        """Test that records are written to the file."""
        log_file = tmp_path / "run.log"
        setup_logging(level="INFO", log_file=log_file)
        get_logger("tests").info("hello file")
        for handler in logging.getLogger("qcaveat").handlers:
            handler.flush()
        assert "hello file" in log_file.read_text(encoding="utf-8")


class TestGetLogger:
    """Tests for get_logger function."""

    def test_prefixes_name(self):
        """Test that loggers live under the qcaveat hierarchy."""
        assert get_logger("module").name == "qcaveat.module"

    def test_keeps_qualified_name(self):
        """Test that package names are not double-prefixed."""
        assert get_logger("qcaveat.linalg").name == "qcaveat.linalg"

    def test_cached(self):
        """Test that the same logger is returned."""
        assert get_logger("x") is get_logger("x")


class TestSetLogLevel:
    """Tests for set_log_level function."""

    def test_debug_opens_console(self):
        """Test DEBUG lowers the console handler."""
        setup_logging(level="INFO")
        set_log_level("DEBUG")
        root = logging.getLogger("qcaveat")
        assert root.level == logging.DEBUG
        assert root.handlers[0].level == logging.DEBUG

    def test_info_keeps_console_quiet(self):
        """Test non-debug levels keep the console at WARNING."""
        setup_logging(level="DEBUG")
        set_log_level("INFO")
        assert logging.getLogger("qcaveat").handlers[0].level == logging.WARNING
