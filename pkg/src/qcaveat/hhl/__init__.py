"""HHL linear-system solver."""

from qcaveat.hhl.solver import (
    HhlConfig,
    HhlResult,
    hhl_circuit,
    hhl_ideal,
    rotation_blocks,
    scaling_rescale,
)

__all__ = [
    "HhlConfig",
    "HhlResult",
    "hhl_circuit",
    "hhl_ideal",
    "rotation_blocks",
    "scaling_rescale",
]
