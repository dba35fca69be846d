"""
General utility functions shared by the config loader, harness and CLI.
"""

import hashlib
import math
from typing import Any


def float_or_none(v: Any) -> float | None:
    """Convert value to a finite float or return None."""
    if v is None:
        return None
    try:
        result = float(v)
    except (ValueError, TypeError):
        return None
    return result if math.isfinite(result) else None


def parse_float_list(text: str | list | tuple) -> list[float]:
    """
    Parse "0.0, 0.3,0.6" (or an already-split sequence) into floats.

    Raises ValueError on empty input or on any non-numeric item.
    """
    items = text if isinstance(text, (list, tuple)) else str(text).split(",")
    values: list[float] = []
    for item in items:
        value = float_or_none(str(item).strip())
        if value is None:
            raise ValueError(f"not a number: {item!r}")
        values.append(value)
    if not values:
        raise ValueError("empty list")
    return values


def stable_hash(*parts: Any) -> int:
    """
    Process-independent 63-bit hash of the given parts.

    Never use the built-in hash() for seeds: string hashing is salted per process.
    """
    payload = "\x1f".join(repr(p) for p in parts).encode("utf-8")
    digest = hashlib.sha256(payload).digest()[:8]
    return int.from_bytes(digest, "big") & 0x7FFF_FFFF_FFFF_FFFF


def format_param(value: float) -> str:
    """Compact, filename-safe rendering of a parameter value (0.3 -> "0.3")."""
    text = f"{value:g}"
    return text.replace("-", "m")


def parse_key_value_text(text: str) -> dict[str, str]:
    """
    Parse flat `key = value` lines. Blank lines and `#` comments are skipped.

    Raises ValueError naming the line for malformed or repeated keys.
    """
    result: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ValueError(f"line {lineno}: missing key")
        if key in result:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        result[key] = value
    return result
