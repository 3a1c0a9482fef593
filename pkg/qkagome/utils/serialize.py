"""
title : serialize.py
create : @tarickali 26/10/17
update : @tarickali 26/10/17
"""

from typing import Any
from pathlib import Path
import json
import math

import numpy as np

__all__ = ["to_plain", "dumps", "write_json", "read_json"]

SIGNIFICANT = 12


def _round(x: float) -> float | None:
    if not math.isfinite(x):
        return None
    if x == 0.0:
        return 0.0
    return float(f"{x:.{SIGNIFICANT}g}")


def to_plain(obj: Any) -> Any:
    """Turn obj into JSON-ready values.

    Complex numbers become [re, im] pairs, floats are rounded to SIGNIFICANT
    digits and non-finite floats become null.
    """

    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_plain(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [_round(obj.real), _round(obj.imag)]
    if isinstance(obj, (float, np.floating)):
        return _round(float(obj))
    return obj


def dumps(obj: Any) -> str:
    return json.dumps(to_plain(obj), sort_keys=True, indent=2) + "\n"


def write_json(path: str | Path, obj: Any) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(obj))


def read_json(path: str | Path) -> Any:
    return json.loads(Path(path).read_text())
