"""Canonical, locale-independent number rendering for all emitted files.

Integral values print without a decimal point; everything else uses Python's
shortest round-trip repr (at most 17 significant digits, trailing zeros
already trimmed, "." as the decimal separator regardless of locale).
"""

from __future__ import annotations


def format_number(value: float) -> str:
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    return repr(float(value))


def canonical_json_value(value: float) -> float | int:
    """Collapse integral floats to ints so JSON output carries no ".0"."""
    if value == int(value) and abs(value) < 1e16:
        return int(value)
    return float(value)
