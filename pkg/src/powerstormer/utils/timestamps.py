"""UTC timestamps with a ``Z`` suffix."""

from datetime import datetime, timezone
from typing import Optional


def get_utc_timestamp() -> datetime:
    """Current time in UTC."""
    return datetime.now(timezone.utc)


def format_timestamp(dt: Optional[datetime] = None) -> str:
    """ISO-8601 with millisecond precision and ``Z`` suffix.

    Example:
        >>> format_timestamp(datetime(2024, 1, 2, 3, 4, 5, 678000, tzinfo=timezone.utc))
        '2024-01-02T03:04:05.678Z'
    """
    if dt is None:
        dt = get_utc_timestamp()
    elif dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    else:
        dt = dt.astimezone(timezone.utc)
    return dt.strftime("%Y-%m-%dT%H:%M:%S.") + f"{dt.microsecond // 1000:03d}Z"
