"""Fixed-precision rendering of numbers for JSON and CSV output."""

import math
from typing import Any

SIGNIFICANT_DIGITS = 15


def round_significant(value: float, digits: int = SIGNIFICANT_DIGITS) -> float:
    if not math.isfinite(value) or value == 0:
        return value
    return float(f"{value:.{digits}g}")


def format_float(value: float, digits: int = SIGNIFICANT_DIGITS) -> str:
    return f"{value:.{digits}g}"


def rounded(data: Any, digits: int = SIGNIFICANT_DIGITS) -> Any:
    """Copy of nested dicts/lists with every float rounded to `digits` significant digits."""
    if isinstance(data, bool) or data is None:
        return data
    if isinstance(data, float):
        return round_significant(data, digits)
    if isinstance(data, dict):
        return {key: rounded(value, digits) for key, value in data.items()}
    if isinstance(data, (list, tuple)):
        return [rounded(value, digits) for value in data]
    return data


def csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value)
    return str(value)
