"""Circuit operations on immutable statevectors.

Every operation returns a new QuantumState; inputs are never modified.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from functools import reduce

import numpy as np

from qcaveat.config.defaults import (
    POSTSELECTION_FLOOR,
    PREPARE_NORM_TOLERANCE,
    SYSTEM_REGISTER,
    UNITARY_TOLERANCE,
)
from qcaveat.exceptions import (
    DimensionMismatchError,
    NonUnitaryError,
    NormalizationError,
    PostselectionError,
    PreconditionError,
)
from qcaveat.simulator.state import QuantumState, RegisterLayout
from qcaveat.utils.logging import get_logger

logger = get_logger(__name__)

_HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)


@dataclass(frozen=True, eq=False)
class ProbabilityTable:
    """Exact Born-rule distribution over one register's basis outcomes."""

    register: str
    probabilities: np.ndarray

    def __post_init__(self) -> None:
        probabilities = np.clip(np.array(self.probabilities, dtype=float).reshape(-1), 0.0, None)
        probabilities.setflags(write=False)
        object.__setattr__(self, "probabilities", probabilities)

    @property
    def size(self) -> int:
        return int(self.probabilities.size)

    @property
    def peak(self) -> int:
        """Most likely outcome (smallest index on ties)."""
        return int(np.argmax(self.probabilities))

    def __getitem__(self, outcome: int) -> float:
        return float(self.probabilities[outcome])

    def as_dict(self, threshold: float = 0.0) -> dict[int, float]:
        """Outcomes with probability above threshold."""
        return {
            int(y): float(p) for y, p in enumerate(self.probabilities) if p > threshold
        }


@dataclass(frozen=True)
class MeasurementRecord:
    """Outcome of a projective measurement with its collapsed state."""

    register: str
    outcome: int
    probability: float  # Born-rule probability of this outcome
    post_state: QuantumState  # Renormalized


def _check_unitary(u: np.ndarray) -> None:
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise DimensionMismatchError(f"Operator must be square, got shape {u.shape}")
    deviation = float(np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0]), 2))
    if deviation > UNITARY_TOLERANCE:
        raise NonUnitaryError(deviation)


def prepare_state(
    layout: RegisterLayout,
    amplitudes: object,
    normalize: bool = False,
) -> QuantumState:
    """
    Create a state from an amplitude vector.

    Vectors whose norm is within 1e-8 of one are renormalized on entry.

    Args:
        layout: Register layout.
        amplitudes: Complex amplitude vector of length 2^n.
        normalize: Accept any nonzero norm and rescale.

    Raises:
        DimensionMismatchError: On a length mismatch.
        NormalizationError: On a zero vector or a norm too far from one.
    """
    vector = np.array(amplitudes, dtype=complex).reshape(-1)
    if vector.size != layout.dimension:
        raise DimensionMismatchError(
            f"Layout {layout.as_dict()} needs {layout.dimension} amplitudes, got {vector.size}"
        )
    norm = float(np.linalg.norm(vector))
    if norm == 0.0 or not np.isfinite(norm):
        raise NormalizationError("Cannot prepare a state from a zero or non-finite vector")
    if not normalize and abs(norm - 1.0) > PREPARE_NORM_TOLERANCE:
        raise NormalizationError(f"Amplitude norm {norm!r} is not within 1e-8 of 1")
    return QuantumState(layout, vector / norm)


def product_state(layout: RegisterLayout, parts: Mapping[str, object]) -> QuantumState:
    """
    Tensor product of per-register vectors.

    Registers missing from parts start in |0>. Each part is normalized.
    """
    vectors = []
    for name, width in layout:
        size = 1 << width
        if name in parts:
            v = np.array(parts[name], dtype=complex).reshape(-1)
            if v.size != size:
                raise DimensionMismatchError(
                    f"Register {name!r} has dimension {size}, got vector of length {v.size}"
                )
            norm = np.linalg.norm(v)
            if norm == 0.0:
                raise NormalizationError(f"Register {name!r} vector is zero")
            v = v / norm
        else:
            v = np.zeros(size, dtype=complex)
            v[0] = 1.0
        vectors.append(v)
    unknown = set(parts) - set(layout.names)
    if unknown:
        raise PreconditionError(f"Unknown registers {sorted(unknown)}")
    return QuantumState(layout, reduce(np.kron, vectors))


def apply_unitary(state: QuantumState, u: np.ndarray, register: str) -> QuantumState:
    """Apply a unitary to one register."""
    u = np.asarray(u, dtype=complex)
    axis = state.layout.axis(register)
    if u.shape != (state.layout.shape[axis],) * 2:
        raise DimensionMismatchError(
            f"Operator shape {u.shape} does not match register {register!r} "
            f"of dimension {state.layout.shape[axis]}"
        )
    _check_unitary(u)
    moved = np.moveaxis(state.tensor, axis, -1)
    return state.with_tensor(np.moveaxis(moved @ u.T, -1, axis))


def apply_conditioned(
    state: QuantumState,
    control_register: str,
    target_register: str,
    blocks: np.ndarray,
) -> QuantumState:
    """
    Apply blocks[x] to the target register on the branch where control = x.

    Args:
        state: Input state.
        control_register: Register whose basis value selects the block.
        target_register: Register acted on.
        blocks: Array of shape (2^k_control, d, d), each block unitary.
    """
    layout = state.layout
    ci = layout.axis(control_register)
    ti = layout.axis(target_register)
    if ci == ti:
        raise PreconditionError("Control and target registers must differ")
    n_control = layout.shape[ci]
    d = layout.shape[ti]
    blocks = np.asarray(blocks, dtype=complex)
    if blocks.shape != (n_control, d, d):
        raise DimensionMismatchError(
            f"Expected blocks of shape {(n_control, d, d)}, got {blocks.shape}"
        )
    moved = np.moveaxis(state.tensor, (ci, ti), (0, -1))
    out = np.einsum("x...j,xij->x...i", moved, blocks)
    return state.with_tensor(np.moveaxis(out, (0, -1), (ci, ti)))


def unitary_powers(u: np.ndarray, count: int) -> np.ndarray:
    """
    Stack U^0 .. U^(count-1), each built from repeated squares U^(2^b).

    Returns:
        Array of shape (count, d, d).
    """
    d = u.shape[0]
    squares = [u]
    while (1 << len(squares)) < count:
        squares.append(squares[-1] @ squares[-1])

    powers = np.empty((count, d, d), dtype=complex)
    powers[0] = np.eye(d, dtype=complex)
    for x in range(1, count):
        low = x & -x
        powers[x] = squares[low.bit_length() - 1] @ powers[x - low]
    return powers


def apply_controlled_power(
    state: QuantumState,
    u: np.ndarray,
    control_register: str,
    target_register: str = SYSTEM_REGISTER,
) -> QuantumState:
    """
    Map |x>|psi> to |x> U^x |psi> for every clock value x.

    Raises:
        NonUnitaryError: If U is not unitary within 1e-10.
        DimensionMismatchError: If U does not match the target register.
    """
    u = np.asarray(u, dtype=complex)
    d = state.layout.shape[state.layout.axis(target_register)]
    if u.shape != (d, d):
        raise DimensionMismatchError(
            f"Operator shape {u.shape} does not match register {target_register!r} "
            f"of dimension {d}"
        )
    _check_unitary(u)
    n_control = state.layout.shape[state.layout.axis(control_register)]
    return apply_conditioned(
        state, control_register, target_register, unitary_powers(u, n_control)
    )


def inverse_qft(state: QuantumState, register: str) -> QuantumState:
    """Apply (1/sqrt(N)) sum_{x,y} exp(-2 pi i x y / N) |y><x| to a register."""
    axis = state.layout.axis(register)
    return state.with_tensor(np.fft.fft(state.tensor, axis=axis, norm="ortho"))


def qft(state: QuantumState, register: str) -> QuantumState:
    """Forward transform, the adjoint of inverse_qft."""
    axis = state.layout.axis(register)
    return state.with_tensor(np.fft.ifft(state.tensor, axis=axis, norm="ortho"))


def walsh_hadamard(width: int) -> np.ndarray:
    """H tensored width times."""
    return reduce(np.kron, [_HADAMARD] * width)


def hadamard(state: QuantumState, register: str) -> QuantumState:
    """Apply a Hadamard gate to every qubit of a register."""
    return apply_unitary(state, walsh_hadamard(state.layout.width(register)), register)


def apply_controlled_swap(
    state: QuantumState,
    control_register: str,
    first: str,
    second: str,
) -> QuantumState:
    """Swap two equal-width registers on the branch where the control's last qubit is 1."""
    layout = state.layout
    ci = layout.axis(control_register)
    fi = layout.axis(first)
    si = layout.axis(second)
    if len({ci, fi, si}) != 3:
        raise PreconditionError("Control and swapped registers must be distinct")
    if layout.width(first) != layout.width(second):
        raise DimensionMismatchError(
            f"Cannot swap registers of widths {layout.width(first)} and {layout.width(second)}"
        )

    moved = np.array(np.moveaxis(state.tensor, ci, 0))
    # Axes shift by one once the control axis is in front
    fa = fi + 1 if fi < ci else fi
    sa = si + 1 if si < ci else si
    odd = moved[1::2].copy()
    moved[1::2] = np.swapaxes(odd, fa, sa)
    return state.with_tensor(np.moveaxis(moved, 0, ci))


def measure(state: QuantumState, register: str) -> ProbabilityTable:
    """Exact marginal distribution of a register."""
    axis = state.layout.axis(register)
    weights = np.abs(state.tensor) ** 2
    others = tuple(i for i in range(weights.ndim) if i != axis)
    return ProbabilityTable(register, np.sum(weights, axis=others))


def postselect(
    state: QuantumState,
    register: str,
    outcome: int,
    floor: float = POSTSELECTION_FLOOR,
) -> MeasurementRecord:
    """
    Project a register onto one basis outcome and renormalize.

    Raises:
        PostselectionError: If the outcome probability is below floor.
    """
    table = measure(state, register)
    if not 0 <= outcome < table.size:
        raise PreconditionError(f"Outcome {outcome} out of range for register {register!r}")
    probability = table[outcome]
    logger.debug(f"postselect {register}={outcome}: probability {probability:.6e}")
    if probability < floor:
        raise PostselectionError(probability, floor)

    axis = state.layout.axis(register)
    collapsed = np.zeros(state.layout.shape, dtype=complex)
    index = [slice(None)] * collapsed.ndim
    index[axis] = outcome
    collapsed[tuple(index)] = state.tensor[tuple(index)] / np.sqrt(probability)
    return MeasurementRecord(
        register=register,
        outcome=int(outcome),
        probability=probability,
        post_state=state.with_tensor(collapsed),
    )
