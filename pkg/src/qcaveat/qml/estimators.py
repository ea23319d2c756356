"""Shot-noise estimators built on the statevector simulator.

Covers overlap estimation (swap test and Hadamard test), linear-regression
prediction from an HHL solution, nearest-mean classification distance, trace
estimation, and LS-SVM system assembly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from qcaveat.config.defaults import (
    ANCILLA_REGISTER,
    CLASSIFICATION_MAX_ANGLE,
    PREPARE_NORM_TOLERANCE,
)
from qcaveat.estimation.phase import pad_vector, system_qubits
from qcaveat.exceptions import (
    DimensionMismatchError,
    NormalizationError,
    NormTooLargeError,
    PreconditionError,
)
from qcaveat.hhl import HhlConfig, HhlResult, hhl_ideal
from qcaveat.linalg import HermitianMatrix, as_vector, eig_hermitian, thresholded_solve
from qcaveat.qml.datasets import Dataset, gram_matrix
from qcaveat.simulator import (
    RegisterLayout,
    ShotEstimate,
    apply_controlled_swap,
    count_successes,
    hadamard,
    hoeffding_halfwidth,
    measure,
    prepare_state,
    product_state,
)
from qcaveat.utils.logging import get_logger
from qcaveat.utils.rng import make_rng, spawn_seeds

logger = get_logger(__name__)

_FIRST = "first"
_SECOND = "second"


def _unit(vector: object, name: str) -> np.ndarray:
    v = as_vector(vector, name)
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > PREPARE_NORM_TOLERANCE:
        raise NormalizationError(f"{name} must be a unit vector, has norm {norm!r}")
    return v / norm


def _normalized(vector: np.ndarray, name: str) -> np.ndarray:
    norm = float(np.linalg.norm(vector))
    if norm == 0.0:
        raise NormalizationError(f"{name} must be nonzero")
    return vector / norm


def swap_test_acceptance(a: object, b: object) -> float:
    """
    Probability that the swap-test ancilla reads 0.

    Runs ancilla Hadamard, controlled-SWAP and Hadamard on the simulator;
    the result equals 1/2 + |<a|b>|^2 / 2.
    """
    first = _unit(a, "a")
    second = _unit(b, "b")
    if first.size != second.size:
        raise DimensionMismatchError(f"Vectors of length {first.size} and {second.size}")

    width = system_qubits(first.size)
    size = 1 << width
    layout = RegisterLayout.of({ANCILLA_REGISTER: 1, _FIRST: width, _SECOND: width})
    state = product_state(
        layout, {_FIRST: pad_vector(first, size), _SECOND: pad_vector(second, size)}
    )
    state = hadamard(state, ANCILLA_REGISTER)
    state = apply_controlled_swap(state, ANCILLA_REGISTER, _FIRST, _SECOND)
    state = hadamard(state, ANCILLA_REGISTER)
    return measure(state, ANCILLA_REGISTER)[0]


def swap_test(a: object, b: object, shots: int, seed: int) -> ShotEstimate:
    """
    Estimate |<a|b>|^2 from shots of the swap test.

    Args:
        a: Unit vector.
        b: Unit vector of the same length.
        shots: Number of circuit repetitions, >= 1.
        seed: 64-bit seed.

    Returns:
        ShotEstimate of 2 p - 1 clamped to [0, 1], where p is the sampled
        acceptance frequency.
    """
    acceptance = swap_test_acceptance(a, b)
    accepted = count_successes(min(acceptance, 1.0), shots, seed)
    raw = 2.0 * accepted / shots - 1.0
    return ShotEstimate(
        value=min(max(raw, 0.0), 1.0),
        shots=shots,
        confidence_halfwidth=hoeffding_halfwidth(shots, value_range=2.0),
        exact=2.0 * acceptance - 1.0,
        unclamped=raw,
    )


def hadamard_test(
    a: object,
    b: object,
    shots: int,
    seed: int,
    part: Literal["real", "imag"] = "real",
) -> ShotEstimate:
    """
    Estimate Re<a|b> or Im<a|b> by ancilla interference.

    Prepares (|0>|a> + w|1>|b>)/sqrt(2) with w = 1 (real part) or -i
    (imaginary part), applies a Hadamard to the ancilla and reads the
    probability of 0, which is (1 + Re(w <a|b>)) / 2.
    """
    first = _unit(a, "a")
    second = _unit(b, "b")
    if first.size != second.size:
        raise DimensionMismatchError(f"Vectors of length {first.size} and {second.size}")
    weight = 1.0 if part == "real" else -1j

    width = system_qubits(first.size)
    size = 1 << width
    layout = RegisterLayout.of({ANCILLA_REGISTER: 1, _FIRST: width})
    amplitudes = np.concatenate([pad_vector(first, size), weight * pad_vector(second, size)])
    state = hadamard(prepare_state(layout, amplitudes / math.sqrt(2.0)), ANCILLA_REGISTER)
    acceptance = measure(state, ANCILLA_REGISTER)[0]

    accepted = count_successes(min(acceptance, 1.0), shots, seed)
    raw = 2.0 * accepted / shots - 1.0
    return ShotEstimate(
        value=min(max(raw, -1.0), 1.0),
        shots=shots,
        confidence_halfwidth=hoeffding_halfwidth(shots, value_range=2.0),
        exact=2.0 * acceptance - 1.0,
        unclamped=raw,
    )


@dataclass(frozen=True, eq=False)
class RegressionPrediction:
    """Prediction c . x from an HHL solution, with its error breakdown."""

    prediction: complex  # |c| |x~| * estimated <c|x~>
    exact: complex  # c . x for the exact least-squares x
    overlap_estimate: complex  # estimated <c^|x~^>
    exact_overlap: complex  # <c^|x^> for the exact solution
    state_error: float  # |overlap_estimate - exact_overlap|
    prediction_error: float  # |prediction - exact|
    amplification: float  # |c| |x|
    hhl: HhlResult


def regression_predict(
    data: object,
    b: object,
    c: object,
    config: HhlConfig,
    shots: int,
    seed: int = 0,
) -> RegressionPrediction:
    """
    Predict c . x for the least-squares solution of F x ~ b.

    Solves F^dagger F x = F^dagger b with hhl_ideal, estimates |<c|x~>| by a
    swap test and its phase by real and imaginary Hadamard tests, then
    rescales by |c| and the norm-model |x~|.

    Args:
        data: Data matrix F (rows are samples).
        b: Targets, one per row of F.
        c: Query vector, one entry per column of F.
        config: HHL tunables.
        shots: Shots per overlap estimate; 0 uses exact overlaps.
        seed: 64-bit seed.
    """
    f = np.atleast_2d(np.array(data, dtype=complex))
    targets = as_vector(b, "b")
    query = as_vector(c, "c")
    if targets.size != f.shape[0]:
        raise DimensionMismatchError(f"b has {targets.size} entries for {f.shape[0]} rows")
    if query.size != f.shape[1]:
        raise DimensionMismatchError(f"c has {query.size} entries for {f.shape[1]} columns")
    c_norm = float(np.linalg.norm(query))
    if c_norm == 0.0:
        raise NormalizationError("c must be nonzero")
    if shots < 0:
        raise PreconditionError(f"shots must be >= 0, got {shots}")

    normal = HermitianMatrix(f.conj().T @ f)
    rhs = f.conj().T @ targets
    decomposition = eig_hermitian(normal)
    result = hhl_ideal(normal, rhs, config, decomposition)

    x_exact = thresholded_solve(normal, rhs, 0.0, decomposition)
    c_unit = query / c_norm
    x_unit = _normalized(x_exact, "x")
    x_tilde_unit = result.solution_vector

    exact_overlap = complex(np.vdot(c_unit, x_unit))
    if shots == 0:
        overlap = complex(np.vdot(c_unit, x_tilde_unit))
    else:
        swap_seed, real_seed, imag_seed = spawn_seeds(seed, 3)
        magnitude = math.sqrt(swap_test(c_unit, x_tilde_unit, shots, swap_seed).value)
        real = hadamard_test(c_unit, x_tilde_unit, shots, real_seed, "real").value
        imag = hadamard_test(c_unit, x_tilde_unit, shots, imag_seed, "imag").value
        overlap = magnitude * complex(np.exp(1j * math.atan2(imag, real)))

    prediction = c_norm * math.sqrt(result.z_tilde) * overlap
    exact = complex(np.vdot(query, x_exact))
    return RegressionPrediction(
        prediction=prediction,
        exact=exact,
        overlap_estimate=overlap,
        exact_overlap=exact_overlap,
        state_error=abs(overlap - exact_overlap),
        prediction_error=abs(prediction - exact),
        amplification=c_norm * float(np.linalg.norm(x_exact)),
        hhl=result,
    )


@dataclass(frozen=True, eq=False)
class ClassificationEstimate:
    """Nearest-mean distance estimate and its error decomposition."""

    distance_estimate: float  # 2 P^ Z^^2
    distance: float  # |u - mean(V)|^2
    p_exact: float  # |u - mean(V)|^2 / (2 Z^2)
    p_estimate: float
    z_cls: float  # |u|^2 + (1/M) sum |v_j|^2
    z_estimate: float  # from the sampled |1> branch probability
    branch_probability: float  # exact probability of the |1> branch
    branch_probability_first_order: float  # Z t^2 / 2
    preparation_fidelity: float  # overlap of the normalized |1> branch with the target state
    p_term_error: float  # 2 Z^2 |P^ - P|, the amplified P error alone
    shots: int
    z_shots: int  # 0 when Z is exact

    @property
    def distance_error(self) -> float:
        return abs(self.distance_estimate - self.distance)

    @property
    def z_relative_error(self) -> float:
        return abs(self.z_estimate - self.z_cls) / self.z_cls


def classification_state(u: object, cluster: Dataset, t: float) -> np.ndarray:
    """
    Prepared state over ancilla x index, length 2 (M + 1).

    The ancilla-0 half holds cos(|u| t), -cos(|v_j| t)/sqrt(M) over sqrt(2);
    the ancilla-1 half holds -i sin(|u| t), +i sin(|v_j| t)/sqrt(M) over sqrt(2).
    """
    query = as_vector(u, "u")
    norms = np.concatenate([[np.linalg.norm(query)], cluster.norms])
    signs = np.concatenate([[1.0], -np.ones(cluster.size) / math.sqrt(cluster.size)])
    zero_branch = signs * np.cos(norms * t) / math.sqrt(2.0)
    one_branch = -1j * signs * np.sin(norms * t) / math.sqrt(2.0)
    return np.concatenate([zero_branch, one_branch])


def classification_target(u: object, cluster: Dataset) -> np.ndarray:
    """(|u|, -|v_j|/sqrt(M)) / sqrt(Z), the state the |1> branch approximates."""
    query = as_vector(u, "u")
    amplitudes = np.concatenate(
        [[np.linalg.norm(query)], -cluster.norms / math.sqrt(cluster.size)]
    )
    return amplitudes / np.linalg.norm(amplitudes)


def classification_distance(
    u: object,
    cluster: Dataset,
    t: float,
    shots: int,
    seed: int,
    z_shots: int | None = None,
) -> ClassificationEstimate:
    """
    Estimate |u - mean(V)|^2 as 2 P Z^2.

    P is estimated from swap-test acceptances (1 + P) / 2 and Z from the
    sampled probability of the ancilla-1 branch, about Z t^2 / 2. That branch
    is rare for small t, so Z gets its own shot budget: about 1 / (Z t^2)
    shots per expected hit.

    Args:
        u: Query vector.
        cluster: Cluster V.
        t: Evolution time; t * max norm must not exceed 0.1.
        shots: Shots for the P estimate; 0 returns exact values for P and Z.
        seed: 64-bit seed.
        z_shots: Shots for the Z estimate. Defaults to shots; 0 uses the exact Z.

    Raises:
        NormTooLargeError: If t * max{|u|, |v_j|} > 0.1.
    """
    query = as_vector(u, "u")
    if query.size != cluster.dim:
        raise DimensionMismatchError(
            f"u has dimension {query.size}, cluster vectors have {cluster.dim}"
        )
    if not t > 0.0:
        raise PreconditionError(f"t must be positive, got {t}")
    if shots < 0:
        raise PreconditionError(f"shots must be >= 0, got {shots}")
    z_shots = shots if z_shots is None else z_shots
    if z_shots < 0:
        raise PreconditionError(f"z_shots must be >= 0, got {z_shots}")
    largest = max(float(np.linalg.norm(query)), float(np.max(cluster.norms)))
    if t * largest > CLASSIFICATION_MAX_ANGLE:
        raise NormTooLargeError(
            f"t * max norm = {t * largest:.4g} exceeds {CLASSIFICATION_MAX_ANGLE}; "
            "data norms are too large for this t"
        )

    z_cls = float(np.vdot(query, query).real + np.mean(cluster.norms**2))
    distance = float(np.linalg.norm(query - cluster.mean) ** 2)
    p_exact = distance / (2.0 * z_cls**2)
    if p_exact > 1.0:
        raise PreconditionError(
            f"P = {p_exact:.4g} exceeds 1 (Z = {z_cls:.4g}); rescale the data so Z >= 1"
        )

    state = classification_state(query, cluster, t)
    half = cluster.size + 1
    branch = float(np.sum(np.abs(state[half:]) ** 2))
    first_order = z_cls * t**2 / 2.0
    target = classification_target(query, cluster)
    fidelity = float(abs(np.vdot(target, 1j * state[half:] / math.sqrt(branch))) ** 2)

    if shots == 0:
        p_estimate = p_exact
        z_estimate = z_cls
        z_shots = 0
    else:
        p_seed, z_seed = spawn_seeds(seed, 2)
        accepted = count_successes((1.0 + p_exact) / 2.0, shots, p_seed)
        p_estimate = max(2.0 * accepted / shots - 1.0, 0.0)
        if z_shots == 0:
            z_estimate = z_cls
        else:
            branch_hits = int(make_rng(z_seed).binomial(z_shots, branch))
            z_estimate = 2.0 * branch_hits / (z_shots * t**2)

    logger.debug(f"classification: Z={z_cls:.6g}, P={p_exact:.6g}, P^={p_estimate:.6g}")
    return ClassificationEstimate(
        distance_estimate=2.0 * p_estimate * z_estimate**2,
        distance=distance,
        p_exact=p_exact,
        p_estimate=p_estimate,
        z_cls=z_cls,
        z_estimate=z_estimate,
        branch_probability=branch,
        branch_probability_first_order=first_order,
        preparation_fidelity=fidelity,
        p_term_error=2.0 * z_cls**2 * abs(p_estimate - p_exact),
        shots=shots,
        z_shots=z_shots,
    )


@dataclass(frozen=True)
class TraceEstimate:
    """Estimates of Tr(K)/M and of Tr(K) = M * (Tr(K)/M)."""

    normalized: ShotEstimate
    trace: ShotEstimate
    dim: int


def _check_psd(kernel: HermitianMatrix) -> np.ndarray:
    a = kernel.entries
    diagonal = np.real(np.diag(a))
    scale = max(float(np.max(np.abs(a))), 1.0)
    if np.count_nonzero(a - np.diag(np.diag(a))) == 0:
        smallest = float(np.min(diagonal))
    else:
        smallest = float(np.linalg.eigvalsh(a)[0])
    if smallest < -1e-10 * scale:
        raise PreconditionError(
            f"Kernel is not positive semidefinite (min eigenvalue {smallest:.3e})"
        )
    return diagonal


def trace_estimate(kernel: HermitianMatrix, shots: int, seed: int) -> TraceEstimate:
    """
    Sample Tr(K)/M from uniformly drawn diagonal entries and rescale to Tr(K).

    Each shot reads one uniformly chosen diagonal entry, an unbiased draw of
    Tr(K)/M whose range is the diagonal spread. The Tr(K) estimate carries
    M times the error of the normalized one.
    """
    if shots < 1:
        raise PreconditionError(f"shots must be >= 1, got {shots}")
    diagonal = _check_psd(kernel)
    m = kernel.dim

    draws = diagonal[make_rng(seed).integers(0, m, size=shots)]
    value = float(np.mean(draws))
    halfwidth = hoeffding_halfwidth(shots, value_range=float(np.ptp(diagonal)))
    exact = float(np.sum(diagonal))

    return TraceEstimate(
        normalized=ShotEstimate(
            value=value, shots=shots, confidence_halfwidth=halfwidth, exact=exact / m
        ),
        trace=ShotEstimate(
            value=m * value, shots=shots, confidence_halfwidth=m * halfwidth, exact=exact
        ),
        dim=m,
    )


def build_lssvm_system(
    dataset: Dataset,
    targets: object,
    gamma: float,
) -> tuple[HermitianMatrix, np.ndarray]:
    """
    Assemble the LS-SVM linear system.

    Returns:
        F = [[0, 1^T], [1, K + I / gamma]] with the linear kernel K, and the
        right-hand side (0, y).
    """
    if not gamma > 0.0:
        raise PreconditionError(f"gamma must be positive, got {gamma}")
    y = np.asarray(targets, dtype=float).reshape(-1)
    if y.size != dataset.size:
        raise DimensionMismatchError(f"{y.size} targets for {dataset.size} data points")

    m = dataset.size
    kernel = gram_matrix(dataset).entries
    f = np.zeros((m + 1, m + 1), dtype=complex)
    f[0, 1:] = 1.0
    f[1:, 0] = 1.0
    f[1:, 1:] = kernel + np.eye(m) / gamma
    return HermitianMatrix(f), np.concatenate([[0.0], y])
