"""Complexity models for phase estimation, HHL and quantum counting.

All formulas use a unit constant and natural logarithms; values are in
abstract cost units, never wall-clock time.
"""

from __future__ import annotations

import math
import re
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from qcaveat.estimation.phase import QpeConfig
from qcaveat.exceptions import PreconditionError


class CostVariant(str, Enum):
    """Complexity formulas."""

    QPE = "qpe"  # log(M) / (eps delta^gamma)
    BASE = "base"  # log(M) s^2 kappa^2 / eps
    RESCALED = "rescaled"  # log(M) s^2 / (t^2 lambda_min^2 eps)
    THRESHOLDED = "thresholded"  # log(M) s^2 / (t^2 mu^2 eps)
    NORM_AWARE = "norm_aware"  # log(M) s^2 kappa^2 max{kappa |b|^2, |x|} / eps~

    @classmethod
    def parse(cls, value: CostVariant | str) -> CostVariant:
        """
        Look up a variant by name, case-insensitively.

        A trailing "_eq<number>" formula label is accepted and ignored.

        Raises:
            PreconditionError: If the name matches no variant.
        """
        if isinstance(value, cls):
            return value
        name = _LABEL_SUFFIX.sub("", str(value).strip().lower())
        try:
            return cls(name)
        except ValueError:
            known = ", ".join(v.value for v in cls)
            raise PreconditionError(
                f"Unknown cost variant '{value}'; expected one of {known}"
            ) from None


_LABEL_SUFFIX = re.compile(r"_eq\d+$")


_REQUIRED: dict[CostVariant, tuple[str, ...]] = {
    CostVariant.QPE: ("M", "epsilon", "delta", "gamma"),
    CostVariant.BASE: ("M", "s", "kappa", "epsilon"),
    CostVariant.RESCALED: ("M", "s", "t", "lambda_min", "epsilon"),
    CostVariant.THRESHOLDED: ("M", "s", "t", "mu", "epsilon"),
    CostVariant.NORM_AWARE: ("M", "s", "kappa", "b_norm", "x_norm"),
}


class CostModel(BaseModel):
    """Inputs of the complexity formulas; every field is optional but positive."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    M: int | None = Field(default=None, gt=0)
    s: float | None = Field(default=None, gt=0.0)  # sparseness
    kappa: float | None = Field(default=None, gt=0.0)
    epsilon: float | None = Field(default=None, gt=0.0)  # simulation accuracy
    delta: float | None = Field(default=None, gt=0.0)  # eigenvalue accuracy
    t: float | None = Field(default=None, gt=0.0)
    mu: float | None = Field(default=None, gt=0.0)
    gamma: float | None = Field(default=None, gt=0.0)  # simulation exponent
    b_norm: float | None = Field(default=None, gt=0.0)
    x_norm: float | None = Field(default=None, gt=0.0)
    lambda_min: float | None = Field(default=None, gt=0.0)  # smallest |lambda~| before scaling
    target_epsilon: float | None = Field(default=None, gt=0.0)  # eps~; defaults to epsilon

    @classmethod
    def from_qpe_config(cls, config: QpeConfig, **fields: float) -> CostModel:
        """Model with t and delta = pi / (t N) taken from a phase-estimation config."""
        return cls(t=config.t, delta=config.resolution, **fields)


def _require(model: CostModel, variant: CostVariant) -> dict[str, float]:
    values: dict[str, float] = {}
    for name in _REQUIRED[variant]:
        value = getattr(model, name)
        if value is None:
            raise PreconditionError(f"{variant.value} needs '{name}'")
        values[name] = float(value)
    if variant is CostVariant.NORM_AWARE:
        target = model.target_epsilon if model.target_epsilon is not None else model.epsilon
        if target is None:
            raise PreconditionError(f"{variant.value} needs 'target_epsilon' or 'epsilon'")
        values["target_epsilon"] = float(target)
    return values


def hhl_cost(model: CostModel, variant: CostVariant | str) -> float:
    """
    Evaluate one complexity formula.

    Args:
        model: Formula inputs.
        variant: Which formula.

    Returns:
        Cost in unit-constant cost units.

    Raises:
        PreconditionError: If the variant is unknown or a required field is missing.
    """
    variant = CostVariant.parse(variant)
    v = _require(model, variant)
    log_m = math.log(v["M"])

    if variant is CostVariant.QPE:
        return log_m / (v["epsilon"] * v["delta"] ** v["gamma"])
    if variant is CostVariant.BASE:
        return log_m * v["s"] ** 2 * v["kappa"] ** 2 / v["epsilon"]
    if variant is CostVariant.RESCALED:
        return log_m * v["s"] ** 2 / (v["t"] ** 2 * v["lambda_min"] ** 2 * v["epsilon"])
    if variant is CostVariant.THRESHOLDED:
        return log_m * v["s"] ** 2 / (v["t"] ** 2 * v["mu"] ** 2 * v["epsilon"])
    amplification = max(v["kappa"] * v["b_norm"] ** 2, v["x_norm"])
    return log_m * v["s"] ** 2 * v["kappa"] ** 2 * amplification / v["target_epsilon"]


def counting_cost(n: float, k: float, epsilon: float) -> float:
    """
    Quantum counting cost sqrt(N/K) / eps for relative error eps.

    At eps = 1/K this becomes sqrt(N K).
    """
    for name, value in (("N", n), ("K", k), ("epsilon", epsilon)):
        if not value > 0:
            raise PreconditionError(f"{name} must be positive, got {value}")
    return math.sqrt(n / k) / epsilon
