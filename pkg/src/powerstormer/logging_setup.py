"""Logging configuration for the ``PowerStormer`` logger tree."""

import logging
from typing import Optional

from powerstormer.exceptions import ReportIOError

LOGGER_NAME = "PowerStormer"
CONSOLE_FORMAT = "PowerStormer - %(levelname)s: %(message)s"
FILE_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def configure_logging(level: str = "WARNING", log_file: Optional[str] = None, quiet: bool = False) -> logging.Logger:
    """Configure the ``PowerStormer`` logger and return it.

    Existing handlers are replaced. With ``log_file`` records go to that file
    in the full timestamped format; otherwise to stderr with a short prefix.
    ``quiet`` installs only a ``NullHandler``.

    Raises:
        ReportIOError: ``log_file`` cannot be opened for writing.
    """
    root = logging.getLogger(LOGGER_NAME)
    root.propagate = False
    root.setLevel(getattr(logging, str(level).upper(), logging.WARNING))

    for handler in root.handlers[:]:
        try:
            handler.close()
        except Exception:
            pass
        root.removeHandler(handler)

    if quiet:
        root.addHandler(logging.NullHandler())
        return root

    if log_file:
        try:
            handler: logging.Handler = logging.FileHandler(log_file)
        except OSError as e:
            raise ReportIOError(f"Cannot open log file {log_file}: {e}") from e
        handler.setFormatter(logging.Formatter(FILE_FORMAT))
    else:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(CONSOLE_FORMAT))
    handler.setLevel(root.level)
    root.addHandler(handler)
    return root
