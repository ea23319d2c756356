"""Deterministic random number generation.

All stochastic draws in qcaveat go through a counter-based Philox generator
keyed by an unsigned 64-bit seed, so identical seeds give identical streams
on every platform.
"""

from __future__ import annotations

import numpy as np

from qcaveat.exceptions import PreconditionError

MAX_SEED = 2**64 - 1


def validate_seed(seed: int) -> int:
    """Check that a seed fits in an unsigned 64-bit integer."""
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise PreconditionError(f"Seed must be an integer, got {type(seed).__name__}")
    seed = int(seed)
    if not 0 <= seed <= MAX_SEED:
        raise PreconditionError(f"Seed must be in [0, 2^64 - 1], got {seed}")
    return seed


def make_rng(seed: int) -> np.random.Generator:
    """Create a Philox-backed generator for the given seed."""
    return np.random.Generator(np.random.Philox(validate_seed(seed)))


def spawn_seeds(seed: int, count: int) -> list[int]:
    """
    Derive independent child seeds for grid points or trials.

    Args:
        seed: Parent seed.
        count: Number of child seeds.

    Returns:
        List of 64-bit child seeds, stable for a given (seed, count index).
    """
    children = np.random.SeedSequence(validate_seed(seed)).spawn(count)
    return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in children]
