"""Scaling-law fits."""

from __future__ import annotations

import numpy as np

from qcaveat.exceptions import AnalysisError


def loglog_slope(x: object, y: object) -> float:
    """Least-squares slope of log(y) against log(x)."""
    xs = np.asarray(x, dtype=float).reshape(-1)
    ys = np.asarray(y, dtype=float).reshape(-1)
    if xs.size != ys.size or xs.size < 2:
        raise AnalysisError(f"Need at least two paired points, got {xs.size} and {ys.size}")
    if np.any(xs <= 0.0) or np.any(ys <= 0.0) or not np.all(np.isfinite(xs * ys)):
        raise AnalysisError("Log-log fit needs positive finite values")
    slope, _ = np.polyfit(np.log(xs), np.log(ys), 1)
    return float(slope)
