"""Quantum phase estimation: time-scale selection, closed form, circuit and decoding.

For an eigenvalue lambda and time scale t the clock register of N = 2^k
points measures y with probability

    |sin(N Delta / 2) / sin(Delta / 2)|^2 / N^2,   Delta = lambda t - 2 pi y / N,

and decodes y back to an eigenvalue estimate, reading phases above pi as
negative eigenvalues.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from qcaveat.config.defaults import (
    CLOCK_REGISTER,
    DEFAULT_SAFETY_FACTOR,
    MAX_QUBITS,
    PHASE_SINGULARITY_TOLERANCE,
    SYSTEM_REGISTER,
)
from qcaveat.exceptions import (
    DimensionMismatchError,
    PhaseWrapError,
    PreconditionError,
    TimeScaleError,
)
from qcaveat.linalg import (
    BoundChoice,
    HermitianMatrix,
    SpectralDecomposition,
    as_vector,
    eig_hermitian,
    matrix_exponential_unitary,
    spectral_bounds,
)
from qcaveat.simulator import (
    ProbabilityTable,
    QuantumState,
    RegisterLayout,
    apply_controlled_power,
    hadamard,
    inverse_qft,
    measure,
    product_state,
)
from qcaveat.utils.formatting import format_float
from qcaveat.utils.logging import get_logger

logger = get_logger(__name__)


class TimeScalePolicy(BaseModel):
    """Which spectral bound sets t, and how far inside pi to stay."""

    model_config = ConfigDict(frozen=True)

    bound_choice: BoundChoice = BoundChoice.ONE_NORM
    safety_factor: float = Field(default=DEFAULT_SAFETY_FACTOR, gt=0.0, lt=1.0)


class QpeConfig(BaseModel):
    """Time scale t and clock size k (N = 2^k grid points)."""

    model_config = ConfigDict(frozen=True)

    t: float = Field(gt=0.0, allow_inf_nan=False)
    clock_qubits: int = Field(ge=1, le=MAX_QUBITS)

    @property
    def grid_size(self) -> int:
        """N = 2^k."""
        return 1 << self.clock_qubits

    @property
    def resolution(self) -> float:
        """Decoding accuracy delta = pi / (t N)."""
        return math.pi / (self.t * self.grid_size)


@dataclass(frozen=True, eq=False)
class QpeOutcome:
    """Clock distribution with decoded eigenvalues and the peak outcome."""

    distribution: ProbabilityTable
    decoded: np.ndarray  # decoded[y] = lambda estimate for clock value y
    peak_y: int
    peak_probability: float

    @property
    def peak_eigenvalue(self) -> float:
        return float(self.decoded[self.peak_y])

    def decoded_map(self) -> dict[int, float]:
        return {y: float(value) for y, value in enumerate(self.decoded)}

    def to_json(self, indent: int | None = 2) -> str:
        """Serialize as {distribution, decoded, peak_y, peak_probability}."""
        payload = {
            "distribution": {
                str(y): format_float(p) for y, p in enumerate(self.distribution.probabilities)
            },
            "decoded": {str(y): format_float(v) for y, v in enumerate(self.decoded)},
            "peak_y": self.peak_y,
            "peak_probability": format_float(self.peak_probability),
        }
        return json.dumps(payload, indent=indent)


def choose_time_scale(
    matrix: HermitianMatrix,
    policy: TimeScalePolicy | None = None,
    decomposition: SpectralDecomposition | None = None,
) -> float:
    """
    Pick t = rho * pi / bound so that |lambda_max| t <= rho pi < pi.

    Args:
        matrix: Hermitian matrix A.
        policy: Bound and safety factor. Defaults to the one-norm bound.
        decomposition: Eigendecomposition reused for the exact policy.

    Raises:
        TimeScaleError: If the chosen bound is zero.
    """
    policy = policy or TimeScalePolicy()
    if policy.bound_choice is BoundChoice.EXACT_LAMBDA_MAX:
        d = decomposition if decomposition is not None else eig_hermitian(matrix)
        bound = d.lambda_max
    else:
        bound = spectral_bounds(matrix).get(policy.bound_choice)

    if bound == 0.0:
        raise TimeScaleError("Zero matrix has no time scale")
    t = policy.safety_factor * math.pi / bound
    logger.debug(f"time scale: {policy.bound_choice.value}={bound:.6g} -> t={t:.6g}")
    return t


def decode_eigenvalue(y: int, config: QpeConfig) -> float:
    """
    Map a clock value to an eigenvalue estimate.

    Phases 2 pi y / N <= pi decode as positive; larger phases wrap to
    -2 pi (N - y) / (N t). The boundary y = N/2 decodes as +pi/t.
    """
    n = config.grid_size
    if not 0 <= y < n:
        raise PreconditionError(f"Clock value {y} out of range [0, {n})")
    if 2 * y <= n:
        return 2.0 * math.pi * y / (n * config.t)
    return -2.0 * math.pi * (n - y) / (n * config.t)


def decode_all(config: QpeConfig) -> np.ndarray:
    """decode_eigenvalue for every clock value."""
    return np.array([decode_eigenvalue(y, config) for y in range(config.grid_size)])


def round_to_grid(eigenvalue: float, config: QpeConfig) -> int:
    """Nearest clock value to lambda t, ties toward the smaller value."""
    n = config.grid_size
    x = eigenvalue * config.t * n / (2.0 * math.pi)
    return int(math.ceil(x - 0.5)) % n


def _check_phase(eigenvalue: float, config: QpeConfig) -> None:
    if abs(eigenvalue * config.t) >= math.pi:
        raise PhaseWrapError(
            f"|lambda t| = {abs(eigenvalue * config.t):.6g} >= pi; choose a smaller t"
        )


def check_decodable(eigenvalues: object, config: QpeConfig) -> None:
    """
    Reject eigenvalues whose nearest clock value does not decode back to them.

    Besides |lambda t| < pi, negative phases must stay above -pi (1 - 1/N):
    closer to -pi they round to y = N/2, which decodes as +pi/t.

    Raises:
        PhaseWrapError: If any eigenvalue would decode with the wrong sign.
    """
    n = config.grid_size
    floor = -math.pi * (1.0 - 1.0 / n)
    for eigenvalue in np.atleast_1d(np.asarray(eigenvalues, dtype=float)):
        _check_phase(float(eigenvalue), config)
        phase = float(eigenvalue) * config.t
        if phase <= floor:
            raise PhaseWrapError(
                f"lambda t = {phase:.6g} rounds to clock value {n // 2} and decodes as "
                f"+pi/t; lower the safety factor or add clock qubits (k={config.clock_qubits})"
            )


def _outcome(probabilities: np.ndarray, config: QpeConfig) -> QpeOutcome:
    table = ProbabilityTable(CLOCK_REGISTER, probabilities)
    return QpeOutcome(
        distribution=table,
        decoded=decode_all(config),
        peak_y=table.peak,
        peak_probability=table[table.peak],
    )


def closed_form_probabilities(eigenvalue: float, config: QpeConfig) -> np.ndarray:
    """Clock distribution for one eigenvalue, removable singularity resolved."""
    _check_phase(eigenvalue, config)
    n = config.grid_size
    y = np.arange(n)
    delta = eigenvalue * config.t - 2.0 * math.pi * y / n
    delta = np.mod(delta + math.pi, 2.0 * math.pi) - math.pi

    exact = np.abs(delta) < PHASE_SINGULARITY_TOLERANCE
    safe = np.where(exact, 1.0, delta)
    probabilities = (np.sin(n * safe / 2.0) / np.sin(safe / 2.0)) ** 2 / n**2
    return np.where(exact, 1.0, probabilities)


def qpe_distribution_closed_form(eigenvalue: float, config: QpeConfig) -> QpeOutcome:
    """
    Evaluate the QPE outcome distribution for a single eigenvalue.

    Raises:
        PhaseWrapError: If |lambda t| >= pi, or if lambda t is close enough to -pi
            that the peak would decode with the wrong sign.
    """
    check_decodable(eigenvalue, config)
    return _outcome(closed_form_probabilities(eigenvalue, config), config)


def qpe_mixture_closed_form(
    decomposition: SpectralDecomposition,
    vector: object,
    config: QpeConfig,
) -> QpeOutcome:
    """Closed-form distribution for a superposed input: sum_j |beta_j|^2 P(y | lambda_j)."""
    check_decodable(decomposition.eigenvalues, config)
    v = as_vector(vector, "input")
    weights = np.abs(decomposition.coefficients(v / np.linalg.norm(v))) ** 2
    probabilities = np.zeros(config.grid_size)
    for weight, eigenvalue in zip(weights, decomposition.eigenvalues, strict=True):
        probabilities += weight * closed_form_probabilities(float(eigenvalue), config)
    return _outcome(probabilities, config)


def system_qubits(dim: int) -> int:
    """Qubits needed to hold a dim-dimensional system (at least one)."""
    return max(1, (dim - 1).bit_length())


def pad_vector(vector: np.ndarray, size: int) -> np.ndarray:
    """Zero-pad a vector to size entries."""
    padded = np.zeros(size, dtype=complex)
    padded[: vector.size] = vector
    return padded


def pad_unitary(u: np.ndarray, size: int) -> np.ndarray:
    """Embed a unitary in the top-left block of a size x size identity."""
    padded = np.eye(size, dtype=complex)
    padded[: u.shape[0], : u.shape[1]] = u
    return padded


def qpe_circuit(
    matrix: HermitianMatrix,
    input_state: QuantumState | object,
    config: QpeConfig,
    decomposition: SpectralDecomposition | None = None,
) -> QpeOutcome:
    """
    Run phase estimation on the statevector simulator.

    Prepares a uniform clock, applies controlled powers of exp(iAt), the
    inverse QFT on the clock, and measures the clock. Systems whose dimension
    is not a power of two are zero-padded.

    Args:
        matrix: Hermitian matrix A.
        input_state: System state (QuantumState or amplitude vector).
        config: Time scale and clock size.
        decomposition: Precomputed eigendecomposition of A.

    Returns:
        QpeOutcome over the clock register.
    """
    d = decomposition if decomposition is not None else eig_hermitian(matrix)
    check_decodable(d.eigenvalues, config)

    if isinstance(input_state, QuantumState):
        vector = np.array(input_state.amplitudes)
    else:
        vector = as_vector(input_state, "input")
    norm = float(np.linalg.norm(vector))
    if norm == 0.0:
        raise PreconditionError("Input state must be nonzero")
    vector = vector / norm

    n_sys = system_qubits(matrix.dim)
    size = 1 << n_sys
    if vector.size not in (matrix.dim, size):
        raise DimensionMismatchError(
            f"Input of length {vector.size} does not match matrix dimension {matrix.dim}"
        )
    if vector.size == size and size != matrix.dim and np.any(vector[matrix.dim :] != 0):
        raise PreconditionError("Input has weight outside the matrix dimension")

    layout = RegisterLayout.of({CLOCK_REGISTER: config.clock_qubits, SYSTEM_REGISTER: n_sys})
    u = pad_unitary(matrix_exponential_unitary(d, config.t), size)

    state = product_state(layout, {SYSTEM_REGISTER: pad_vector(vector[: matrix.dim], size)})
    state = hadamard(state, CLOCK_REGISTER)
    state = apply_controlled_power(state, u, CLOCK_REGISTER, SYSTEM_REGISTER)
    state = inverse_qft(state, CLOCK_REGISTER)
    outcome = _outcome(measure(state, CLOCK_REGISTER).probabilities, config)
    logger.debug(
        f"qpe_circuit: dim={matrix.dim}, k={config.clock_qubits}, "
        f"peak y={outcome.peak_y} p={outcome.peak_probability:.6f}"
    )
    return outcome
