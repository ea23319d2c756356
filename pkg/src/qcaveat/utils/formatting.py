"""Output formatting utilities for qcaveat."""

import math

import numpy as np


def format_float(value: float) -> str:
    """
    Format a float for machine-readable output.

    Uses the shortest repr that round-trips, which never depends on locale.

    Args:
        value: The number to format.

    Returns:
        Formatted string ("nan", "inf" and "-inf" for non-finite values).
    """
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return repr(value)


def format_cell(value: object) -> str:
    """Format a table cell for CSV output."""
    if isinstance(value, bool | np.bool_):
        return "true" if value else "false"
    if isinstance(value, int | np.integer):
        return str(int(value))
    if isinstance(value, float | np.floating):
        return format_float(float(value))
    return str(value)


def format_metric(value: object, precision: int = 4) -> str:
    """
    Format a metric for human display.

    Args:
        value: The value to format.
        precision: Significant digits for floats.

    Returns:
        Compact string, scientific notation for very small or large magnitudes.
    """
    if isinstance(value, bool | np.bool_):
        return "yes" if value else "no"
    if isinstance(value, int | np.integer):
        return str(int(value))
    if isinstance(value, float | np.floating):
        value = float(value)
        if value == 0.0 or not math.isfinite(value):
            return format_float(value)
        if abs(value) < 1e-3 or abs(value) >= 1e5:
            return f"{value:.{precision - 1}e}"
        return f"{value:.{precision}g}"
    return str(value)


def truncate_text(text: str, max_length: int = 50, suffix: str = "...") -> str:
    """
    Truncate text to a maximum length.

    Args:
        text: Text to truncate.
        max_length: Maximum length.
        suffix: Suffix to add if truncated.

    Returns:
        Truncated text.
    """
    if not text:
        return ""

    if len(text) <= max_length:
        return text

    return text[: max_length - len(suffix)] + suffix
