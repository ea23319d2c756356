"""Utility modules for qcaveat."""

from qcaveat.utils.formatting import format_cell, format_float, format_metric, truncate_text
from qcaveat.utils.logging import get_logger, setup_logging
from qcaveat.utils.rng import make_rng, spawn_seeds

__all__ = [
    "format_cell",
    "format_float",
    "format_metric",
    "truncate_text",
    "get_logger",
    "setup_logging",
    "make_rng",
    "spawn_seeds",
]
