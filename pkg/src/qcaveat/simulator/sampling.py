"""Shot sampling and shot-noise accounting."""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import asdict, dataclass

import numpy as np

from qcaveat.config.defaults import HOEFFDING_CONFIDENCE
from qcaveat.exceptions import PreconditionError
from qcaveat.simulator.operations import ProbabilityTable
from qcaveat.utils.rng import make_rng


@dataclass(frozen=True)
class ShotEstimate:
    """A shot-sampled estimate with its Hoeffding confidence halfwidth."""

    value: float
    shots: int
    confidence_halfwidth: float  # Hoeffding at HOEFFDING_CONFIDENCE
    exact: float | None = None  # Noise-free value, when known
    unclamped: float | None = None  # Raw estimate before clipping to the valid range

    @property
    def error(self) -> float | None:
        """Absolute deviation from the exact value."""
        return None if self.exact is None else abs(self.value - self.exact)

    def to_dict(self) -> dict[str, float | int | None]:
        return asdict(self)


def hoeffding_halfwidth(
    shots: int,
    value_range: float = 1.0,
    confidence: float = HOEFFDING_CONFIDENCE,
) -> float:
    """
    Two-sided Hoeffding halfwidth for the mean of bounded draws.

    Args:
        shots: Number of draws.
        value_range: Width of the interval each draw lies in.
        confidence: Coverage probability.

    Returns:
        value_range * sqrt(ln(2 / (1 - confidence)) / (2 * shots)).
    """
    _check_shots(shots)
    if not 0.0 < confidence < 1.0:
        raise PreconditionError(f"Confidence must be in (0, 1), got {confidence}")
    return value_range * math.sqrt(math.log(2.0 / (1.0 - confidence)) / (2.0 * shots))


def _check_shots(shots: int) -> None:
    if shots < 1:
        raise PreconditionError(f"shots must be >= 1, got {shots}")


def sample(
    table: ProbabilityTable | Mapping[int, float],
    shots: int,
    seed: int,
) -> dict[int, int]:
    """
    Draw a multinomial sample of outcomes.

    Args:
        table: Outcome probabilities.
        shots: Number of draws, >= 1.
        seed: 64-bit seed; equal seeds give equal counts.

    Returns:
        Counts for outcomes drawn at least once, keyed in ascending order.
    """
    _check_shots(shots)
    if isinstance(table, ProbabilityTable):
        outcomes = np.arange(table.size)
        probabilities = np.array(table.probabilities)
    else:
        outcomes = np.array(sorted(table), dtype=int)
        probabilities = np.array([table[int(y)] for y in outcomes], dtype=float)

    total = probabilities.sum()
    if total <= 0.0 or np.any(probabilities < 0.0):
        raise PreconditionError("Probabilities must be nonnegative with a positive sum")
    counts = make_rng(seed).multinomial(shots, probabilities / total)
    return {int(y): int(c) for y, c in zip(outcomes, counts, strict=True) if c > 0}


def count_successes(probability: float, shots: int, seed: int) -> int:
    """
    Number of accepted shots for a two-outcome experiment.

    Each shot compares one uniform draw against the acceptance probability, so
    for a fixed seed the count is non-decreasing in probability.
    """
    _check_shots(shots)
    if not 0.0 <= probability <= 1.0:
        raise PreconditionError(f"Probability must be in [0, 1], got {probability}")
    return int(np.count_nonzero(make_rng(seed).random(shots) < probability))
