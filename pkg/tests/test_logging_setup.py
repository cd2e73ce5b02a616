"""Tests for logger configuration."""

import logging

import pytest

from powerstormer.exceptions import ReportIOError
from powerstormer.logging_setup import CONSOLE_FORMAT, LOGGER_NAME, configure_logging


@pytest.fixture(autouse=True)
def restore_logger():
    yield
    configure_logging(quiet=True)


def test_console_handler():
    logger = configure_logging("info")
    assert logger.name == LOGGER_NAME
    assert logger.level == logging.INFO
    assert not logger.propagate
    (handler,) = logger.handlers
    assert isinstance(handler, logging.StreamHandler)
    assert handler.formatter._fmt == CONSOLE_FORMAT


def test_file_handler(tmp_path):
    path = tmp_path / "powerstormer.log"
    (handler,) = configure_logging("DEBUG", log_file=str(path)).handlers
    assert isinstance(handler, logging.FileHandler)
    assert handler.baseFilename == str(path)


def test_quiet_replaces_handlers():
    configure_logging("INFO")
    (handler,) = configure_logging("INFO", quiet=True).handlers
    assert isinstance(handler, logging.NullHandler)


def test_unknown_level_falls_back_to_warning():
    assert configure_logging("chatty").level == logging.WARNING


def test_unwritable_log_file(tmp_path):
    with pytest.raises(ReportIOError):
        configure_logging(log_file=str(tmp_path / "missing" / "powerstormer.log"))
