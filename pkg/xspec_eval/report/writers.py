"""
Deterministic serialization helpers shared by every output writer.
"""

import json
from pathlib import Path
from typing import Any, Union


def format_float(value: float) -> str:
    """Shortest representation that round-trips to the same float64"""
    return repr(float(value))


def dump_json(payload: Any) -> str:
    """JSON with fixed key order and round-trip floats, newline terminated"""
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


def write_json(payload: Any, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(dump_json(payload), encoding="utf-8")
    return path


def write_text(text: str, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    return path
