"""JSON serialization helpers for reports, descriptors and events."""

import json
import math
from enum import Enum
from pathlib import Path
from typing import Any

import numpy as np


class PowerStormerJSONEncoder(json.JSONEncoder):
    """JSON encoder that understands numpy values, enums and paths."""

    def default(self, obj: Any) -> Any:
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.floating):
            return float(obj)
        if isinstance(obj, np.bool_):
            return bool(obj)
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        if isinstance(obj, complex):
            return {"re": obj.real, "im": obj.imag}
        if isinstance(obj, Enum):
            return obj.value
        if isinstance(obj, Path):
            return str(obj)
        if isinstance(obj, (set, frozenset)):
            return sorted(obj)
        if hasattr(obj, "to_dict"):
            return obj.to_dict()
        return super().default(obj)


def finite_or_none(value: float) -> Any:
    """``None`` for non-finite floats (JSON has no inf/nan)."""
    value = float(value)
    return value if math.isfinite(value) else None


def canonical_json(obj: Any) -> str:
    """Deterministic JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, cls=PowerStormerJSONEncoder, sort_keys=True, indent=2, allow_nan=False) + "\n"

