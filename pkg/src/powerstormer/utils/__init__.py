"""Serialization and timestamp helpers."""

from powerstormer.utils.serialization import (PowerStormerJSONEncoder, canonical_json,
                                              finite_or_none)
from powerstormer.utils.timestamps import format_timestamp, get_utc_timestamp

__all__ = [
    "PowerStormerJSONEncoder",
    "canonical_json",
    "finite_or_none",
    "format_timestamp",
    "get_utc_timestamp",
]
