"""
Structured campaign events.

Each event is rendered by ``structlog`` as one JSON object with a UTC ``Z``
timestamp. When ``logging.events_file`` is configured the object is appended
to that file as a JSON line; otherwise it goes to the ``PowerStormer.Events``
logger.
"""

import json
import logging
from typing import Any, Dict, Optional

import structlog

from powerstormer.config import ConfigManager
from powerstormer.utils.serialization import PowerStormerJSONEncoder
from powerstormer.utils.timestamps import format_timestamp

logger = logging.getLogger("PowerStormer.Events")

_LEVELS = {"DEBUG": "debug", "INFO": "info", "WARNING": "warning", "ERROR": "error"}


def _add_timestamp(_, __, event_dict: Dict[str, Any]) -> Dict[str, Any]:
    event_dict["timestamp"] = format_timestamp()
    return event_dict


_PROCESSORS = [
    structlog.processors.add_log_level,
    _add_timestamp,
    structlog.processors.JSONRenderer(serializer=json.dumps, cls=PowerStormerJSONEncoder, sort_keys=True),
]


def _emit(sink: Any, level: str, name: str, attributes: Dict[str, Any]) -> None:
    bound = structlog.wrap_logger(sink, processors=_PROCESSORS)
    getattr(bound, _LEVELS.get(level, "info"))(name, attributes=attributes)


def log_event(name: str, attributes: Optional[Dict[str, Any]] = None, level: str = "INFO") -> Dict[str, Any]:
    """Emit a structured event and return its record (without timestamp).

    Args:
        name: Dotted event name, e.g. ``suite.start``
        attributes: JSON-serializable payload
        level: DEBUG, INFO, WARNING or ERROR
    """
    level = level.upper()
    payload = dict(attributes or {})
    record = {"event": name, "level": level.lower(), "attributes": payload}

    events_file = ConfigManager().get("logging.events_file")
    if events_file:
        try:
            with open(events_file, "a", encoding="utf-8") as f:
                _emit(structlog.WriteLogger(f), level, name, payload)
            return record
        except OSError as e:
            logger.error(f"Failed to write to event file {events_file}: {e}")

    if logger.isEnabledFor(getattr(logging, level, logging.INFO)):
        _emit(logger, level, name, payload)
    return record
