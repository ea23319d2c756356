"""HHL linear-system solver at two fidelities.

``hhl_ideal`` rounds every eigenvalue to its nearest clock grid point and
inverts the decoded values analytically. ``hhl_circuit`` runs the full
circuit on the statevector simulator: phase estimation, a clock-controlled
ancilla rotation, uncomputation and postselection.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from qcaveat.config.defaults import (
    ANCILLA_REGISTER,
    CLOCK_REGISTER,
    DEFAULT_SEED,
    MAX_QUBITS,
    POSTSELECTION_FLOOR,
    ROTATION_SHRINK,
    SYSTEM_REGISTER,
)
from qcaveat.estimation.phase import (
    QpeConfig,
    check_decodable,
    decode_all,
    decode_eigenvalue,
    pad_unitary,
    pad_vector,
    round_to_grid,
    system_qubits,
)
from qcaveat.exceptions import (
    DimensionMismatchError,
    EmptySolutionError,
    NormalizationError,
    PreconditionError,
)
from qcaveat.linalg import (
    HermitianMatrix,
    SpectralDecomposition,
    as_vector,
    eig_hermitian,
    matrix_exponential_unitary,
)
from qcaveat.simulator import (
    QuantumState,
    RegisterLayout,
    apply_conditioned,
    apply_controlled_power,
    count_successes,
    hadamard,
    inverse_qft,
    postselect,
    product_state,
    qft,
)
from qcaveat.utils.formatting import format_float
from qcaveat.utils.logging import get_logger
from qcaveat.utils.rng import MAX_SEED

logger = get_logger(__name__)


class HhlConfig(BaseModel):
    """Tunables of one HHL run."""

    model_config = ConfigDict(frozen=True)

    t: float = Field(gt=0.0, allow_inf_nan=False)
    clock_qubits: int = Field(ge=1, le=MAX_QUBITS)
    mu: float = Field(default=0.0, ge=0.0, allow_inf_nan=False)
    rotation_constant: float | None = Field(default=None, gt=0.0)
    shots: int = Field(default=0, ge=0)  # 0 = exact postselection
    seed: int = Field(default=DEFAULT_SEED, ge=0, le=MAX_SEED)

    @property
    def qpe(self) -> QpeConfig:
        return QpeConfig(t=self.t, clock_qubits=self.clock_qubits)


@dataclass(frozen=True, eq=False)
class HhlResult:
    """Outputs of an HHL run plus the per-mode data behind them."""

    solution_state: QuantumState  # |x~> over the (padded) system register
    success_probability: float
    decoded_solution: np.ndarray  # |x~| * |x~> with |x~| from the norm model
    kept_eigenvalue_count: int
    discarded_weight: float  # sum of |beta_j|^2 / |b|^2 over filtered modes
    beta: np.ndarray  # <u_j|b>
    eigenvalues: np.ndarray  # exact lambda_j
    estimates: np.ndarray  # decoded lambda~_j on the clock grid
    kept: np.ndarray  # boolean mask of inverted modes
    rotation_constant: float
    z_tilde: float  # sum over kept j of |beta_j / lambda~_j|^2
    accepted_shots: int | None = None
    clock_return_probability: float | None = None

    @property
    def dim(self) -> int:
        return int(self.decoded_solution.size)

    @property
    def solution_vector(self) -> np.ndarray:
        """Normalized solution restricted to the original dimension."""
        v = np.array(self.solution_state.amplitudes[: self.dim])
        return v / np.linalg.norm(v)

    @property
    def inverse_estimates(self) -> np.ndarray:
        """lambda~_j^-1, with 0 for filtered modes."""
        inverse = np.zeros(self.estimates.size)
        inverse[self.kept] = 1.0 / self.estimates[self.kept]
        return inverse

    def to_dict(self) -> dict[str, Any]:
        return {
            "solution": {
                "re": [format_float(v) for v in self.decoded_solution.real],
                "im": [format_float(v) for v in self.decoded_solution.imag],
            },
            "success_probability": format_float(self.success_probability),
            "kept_eigenvalue_count": self.kept_eigenvalue_count,
            "discarded_weight": format_float(self.discarded_weight),
            "rotation_constant": format_float(self.rotation_constant),
            "z_tilde": format_float(self.z_tilde),
            "accepted_shots": self.accepted_shots,
            "clock_return_probability": (
                None
                if self.clock_return_probability is None
                else format_float(self.clock_return_probability)
            ),
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


@dataclass(frozen=True, eq=False)
class _Modes:
    decomposition: SpectralDecomposition
    b: np.ndarray
    beta: np.ndarray
    estimates: np.ndarray
    kept: np.ndarray
    inverse: np.ndarray
    rotation_constant: float

    @property
    def b_norm_sq(self) -> float:
        return float(np.vdot(self.b, self.b).real)

    @property
    def z_tilde(self) -> float:
        return float(np.sum(np.abs(self.beta * self.inverse) ** 2))

    @property
    def discarded_weight(self) -> float:
        return float(np.sum(np.abs(self.beta[~self.kept]) ** 2) / self.b_norm_sq)


def _resolve_rotation_constant(config: HhlConfig, smallest_kept: float) -> float:
    if config.rotation_constant is None:
        return max(config.mu, smallest_kept) * (1.0 - ROTATION_SHRINK)
    if config.rotation_constant > smallest_kept:
        raise PreconditionError(
            f"rotation_constant {config.rotation_constant} exceeds the smallest kept "
            f"|lambda~| = {smallest_kept}"
        )
    return config.rotation_constant


def _filter_mask(estimates: np.ndarray, mu: float) -> np.ndarray:
    """Decoded zero is never inverted."""
    return (np.abs(estimates) >= mu) & (estimates != 0.0)


def _modes(
    matrix: HermitianMatrix,
    b: object,
    config: HhlConfig,
    decomposition: SpectralDecomposition | None,
) -> _Modes:
    vector = as_vector(b, "b")
    if vector.size != matrix.dim:
        raise DimensionMismatchError(
            f"b has length {vector.size}, matrix dimension is {matrix.dim}"
        )
    if np.linalg.norm(vector) == 0.0:
        raise NormalizationError("b must be nonzero")

    d = decomposition if decomposition is not None else eig_hermitian(matrix)
    qpe = config.qpe
    check_decodable(d.eigenvalues, qpe)
    estimates = np.array(
        [decode_eigenvalue(round_to_grid(float(lam), qpe), qpe) for lam in d.eigenvalues]
    )
    kept = _filter_mask(estimates, config.mu)
    beta = d.coefficients(vector)
    if not np.any(kept):
        raise EmptySolutionError(
            f"Every eigencomponent is filtered at mu={config.mu}; no solution to return"
        )

    inverse = np.zeros(d.dim)
    inverse[kept] = 1.0 / estimates[kept]
    if not np.any(np.abs(beta[kept]) > 0.0):
        raise EmptySolutionError(f"b has no weight on the modes kept at mu={config.mu}")

    constant = _resolve_rotation_constant(config, float(np.min(np.abs(estimates[kept]))))
    logger.debug(
        f"hhl modes: kept {int(kept.sum())}/{d.dim} at mu={config.mu}, C={constant:.6g}"
    )
    return _Modes(
        decomposition=d,
        b=vector,
        beta=beta,
        estimates=estimates,
        kept=kept,
        inverse=inverse,
        rotation_constant=constant,
    )


def _system_state(vector: np.ndarray) -> QuantumState:
    n_sys = system_qubits(vector.size)
    layout = RegisterLayout.of({SYSTEM_REGISTER: n_sys})
    padded = pad_vector(vector, 1 << n_sys)
    return QuantumState(layout, padded / np.linalg.norm(padded))


def _accepted_shots(probability: float, config: HhlConfig) -> int | None:
    if config.shots == 0:
        return None
    return count_successes(min(max(probability, 0.0), 1.0), config.shots, config.seed)


def hhl_ideal(
    matrix: HermitianMatrix,
    b: object,
    config: HhlConfig,
    decomposition: SpectralDecomposition | None = None,
) -> HhlResult:
    """
    Analytic HHL model on the clock grid.

    Each lambda_j is rounded to its nearest grid point and decoded; modes with
    |lambda~_j| < mu are dropped. The result carries the normalized
    sum_j beta_j / lambda~_j |u_j>, its squared norm Z~, and the postselection
    probability C^2 Z~ / |b|^2 of the rotation model.

    Args:
        matrix: Hermitian matrix A with |lambda_max| t < pi.
        b: Nonzero right-hand side.
        config: HHL tunables.
        decomposition: Precomputed eigendecomposition of A.

    Raises:
        PhaseWrapError: If an eigenvalue would decode with the wrong sign.
        EmptySolutionError: If every component is filtered out.
    """
    modes = _modes(matrix, b, config, decomposition)
    x = modes.decomposition.eigenvectors @ (modes.beta * modes.inverse)
    z_tilde = modes.z_tilde
    success = modes.rotation_constant**2 * z_tilde / modes.b_norm_sq

    return HhlResult(
        solution_state=_system_state(x),
        success_probability=success,
        decoded_solution=x,
        kept_eigenvalue_count=int(modes.kept.sum()),
        discarded_weight=modes.discarded_weight,
        beta=modes.beta,
        eigenvalues=np.array(modes.decomposition.eigenvalues),
        estimates=modes.estimates,
        kept=modes.kept,
        rotation_constant=modes.rotation_constant,
        z_tilde=z_tilde,
        accepted_shots=_accepted_shots(success, config),
    )


def rotation_blocks(config: HhlConfig, constant: float) -> np.ndarray:
    """
    Ancilla rotations indexed by clock value.

    Kept values map |0> to sqrt(1 - r^2)|0> + r|1> with r = C / lambda^;
    filtered values get the identity.
    """
    estimates = decode_all(config.qpe)
    kept = _filter_mask(estimates, config.mu)
    blocks = np.tile(np.eye(2, dtype=complex), (estimates.size, 1, 1))
    for y in np.flatnonzero(kept):
        r = float(np.clip(constant / estimates[y], -1.0, 1.0))
        c = math.sqrt(max(0.0, 1.0 - r * r))
        blocks[y] = np.array([[c, -r], [r, c]], dtype=complex)
    return blocks


def hhl_circuit(
    matrix: HermitianMatrix,
    b: object,
    config: HhlConfig,
    decomposition: SpectralDecomposition | None = None,
) -> HhlResult:
    """
    Full circuit-level HHL on the statevector simulator.

    Registers are laid out as ancilla, clock, system. After the rotation and
    uncomputation the ancilla is postselected on |1> and the clock on |0>.
    The decoded solution rescales the postselected state by the norm model
    sqrt(p |b|^2) / C.

    Raises:
        PostselectionError: If the ancilla or clock postselection probability
            is below 1e-12.
    """
    modes = _modes(matrix, b, config, decomposition)
    d = modes.decomposition
    n_sys = system_qubits(matrix.dim)
    size = 1 << n_sys

    layout = RegisterLayout.of(
        {ANCILLA_REGISTER: 1, CLOCK_REGISTER: config.clock_qubits, SYSTEM_REGISTER: n_sys}
    )
    u = pad_unitary(matrix_exponential_unitary(d, config.t), size)
    b_unit = modes.b / math.sqrt(modes.b_norm_sq)

    state = product_state(layout, {SYSTEM_REGISTER: pad_vector(b_unit, size)})
    state = hadamard(state, CLOCK_REGISTER)
    state = apply_controlled_power(state, u, CLOCK_REGISTER, SYSTEM_REGISTER)
    state = inverse_qft(state, CLOCK_REGISTER)

    state = apply_conditioned(
        state,
        CLOCK_REGISTER,
        ANCILLA_REGISTER,
        rotation_blocks(config, modes.rotation_constant),
    )

    state = qft(state, CLOCK_REGISTER)
    state = apply_controlled_power(state, u.conj().T, CLOCK_REGISTER, SYSTEM_REGISTER)
    state = hadamard(state, CLOCK_REGISTER)

    ancilla = postselect(state, ANCILLA_REGISTER, 1, POSTSELECTION_FLOOR)
    clock = postselect(ancilla.post_state, CLOCK_REGISTER, 0, POSTSELECTION_FLOOR)
    logger.info(
        f"hhl_circuit: success probability {ancilla.probability:.6e}, "
        f"clock return {clock.probability:.6f}"
    )

    system = clock.post_state.project({ANCILLA_REGISTER: 1, CLOCK_REGISTER: 0})
    system = system / np.linalg.norm(system)
    solution_state = QuantumState(RegisterLayout.of({SYSTEM_REGISTER: n_sys}), system)

    z_model = ancilla.probability * modes.b_norm_sq / modes.rotation_constant**2
    decoded = math.sqrt(z_model) * system[: matrix.dim]

    return HhlResult(
        solution_state=solution_state,
        success_probability=ancilla.probability,
        decoded_solution=decoded,
        kept_eigenvalue_count=int(modes.kept.sum()),
        discarded_weight=modes.discarded_weight,
        beta=modes.beta,
        eigenvalues=np.array(d.eigenvalues),
        estimates=modes.estimates,
        kept=modes.kept,
        rotation_constant=modes.rotation_constant,
        z_tilde=z_model,
        accepted_shots=_accepted_shots(ancilla.probability, config),
        clock_return_probability=clock.probability,
    )


def scaling_rescale(matrix: HermitianMatrix, t: float) -> HermitianMatrix:
    """Return t * A~; eigenvalues scale by t, eigenvectors are unchanged."""
    if not (math.isfinite(t) and t > 0.0):
        raise PreconditionError(f"t must be positive and finite, got {t}")
    return matrix.scaled(t)
