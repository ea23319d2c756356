"""Registered scaling experiments.

Each scenario sweeps one parameter and emits one row per grid value. Rows
are deterministic in the experiment seed.
"""

from __future__ import annotations

import math
from typing import Annotated, Any, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from qcaveat.analysis.cost import CostModel, CostVariant, counting_cost, hhl_cost
from qcaveat.analysis.errors import error_report
from qcaveat.analysis.experiments import GridPoint, ResultTable, Scenario, ScenarioParameters
from qcaveat.config import get_settings
from qcaveat.config.defaults import DEFAULT_SAFETY_FACTOR, DEFAULT_SEED
from qcaveat.estimation.phase import TimeScalePolicy, choose_time_scale
from qcaveat.exceptions import EmptySolutionError, UnknownScenarioError
from qcaveat.hhl import HhlConfig, hhl_circuit, hhl_ideal
from qcaveat.linalg import (
    BoundChoice,
    HermitianMatrix,
    SpectralDecomposition,
    eig_hermitian,
    hermitian_with_spectrum,
    random_unit_vector,
    thresholded_solve,
)
from qcaveat.qml.datasets import Dataset
from qcaveat.qml.estimators import classification_distance, trace_estimate
from qcaveat.utils.logging import get_logger
from qcaveat.utils.rng import MAX_SEED, make_rng, spawn_seeds

logger = get_logger(__name__)

# Keeps the most negative eigenvalue off the y = N/2 wrap point for k >= 3
SCENARIO_SAFETY_FACTOR = 0.75


def _time_scale(
    matrix: HermitianMatrix, d: SpectralDecomposition, safety_factor: float
) -> float:
    policy = TimeScalePolicy(
        bound_choice=BoundChoice.EXACT_LAMBDA_MAX, safety_factor=safety_factor
    )
    return choose_time_scale(matrix, policy, d)


def _instance(
    seed: int, dim: int, condition: float
) -> tuple[HermitianMatrix, SpectralDecomposition, np.ndarray]:
    """Random Hermitian matrix with |lambda| in [1/condition, 1] and a unit b."""
    rng = make_rng(seed)
    magnitudes = np.geomspace(1.0, 1.0 / condition, dim)
    signs = rng.choice([-1.0, 1.0], size=dim)
    matrix = hermitian_with_spectrum(signs * magnitudes, rng)
    b = random_unit_vector(dim, rng)
    return matrix, eig_hermitian(matrix), b


# =============================================================================
# norm_amplification
# =============================================================================


class NormAmplificationParameters(ScenarioParameters):
    x_norms: list[Annotated[float, Field(gt=0.0)]] = Field(
        default=[1.0, 10.0, 100.0, 1000.0], description="Target solution norms |x|"
    )
    dim: int = Field(default=4, ge=2, le=16, description="Matrix dimension")
    clock_qubits: int = Field(default=5, ge=1, le=12, description="Clock register size k")
    condition: float = Field(default=10.0, ge=1.0, description="Condition number of A")
    safety_factor: float = Field(
        default=SCENARIO_SAFETY_FACTOR, gt=0.0, lt=1.0, description="t = rho pi / |lambda_max|"
    )


class NormAmplification(Scenario):
    """Classical error |x - x~| grows with |x| at a fixed state error."""

    name = "norm_amplification"
    summary = "Classical error vs solution norm at a pinned state error"
    parameters_model = NormAmplificationParameters
    columns = (
        "x_norm",
        "b_norm",
        "state_error",
        "classical_error",
        "amplification",
        "Z_hhl",
        "Z_tilde",
        "residual",
    )

    def grid(self, params: Any) -> list[Any]:
        return list(params.x_norms)

    def evaluate(self, params: Any, point: GridPoint) -> dict[str, Any]:
        # One instance shared by every point; only the scale of b changes
        matrix, d, b_unit = _instance(point.base_seed, params.dim, params.condition)
        t = _time_scale(matrix, d, params.safety_factor)
        x_unit = thresholded_solve(matrix, b_unit, 0.0, d)
        b = b_unit * (float(point.value) / float(np.linalg.norm(x_unit)))

        config = HhlConfig(t=t, clock_qubits=params.clock_qubits)
        result = hhl_ideal(matrix, b, config, d)
        report = error_report(matrix, b, result, d)
        return {
            "x_norm": report.x_norm,
            "b_norm": float(np.linalg.norm(b)),
            "state_error": report.state_error,
            "classical_error": report.classical_error,
            "amplification": report.classical_error / report.state_error,
            "Z_hhl": report.Z,
            "Z_tilde": report.Z_tilde,
            "residual": report.residual,
        }


# =============================================================================
# mu_sweep
# =============================================================================


class MuSweepParameters(ScenarioParameters):
    mus: list[Annotated[float, Field(ge=0.0)]] = Field(
        default=[0.0, 0.05, 0.1, 0.2, 0.5], description="Eigenvalue thresholds mu"
    )
    dim: int = Field(default=6, ge=2, le=16, description="Matrix dimension")
    clock_qubits: int = Field(default=6, ge=1, le=12, description="Clock register size k")
    condition: float = Field(default=50.0, ge=1.0, description="Condition number of A")
    safety_factor: float = Field(
        default=SCENARIO_SAFETY_FACTOR, gt=0.0, lt=1.0, description="t = rho pi / |lambda_max|"
    )
    s: float = Field(default=1.0, gt=0.0, description="Sparseness for the cost model")
    epsilon: float = Field(default=0.01, gt=0.0, description="Simulation accuracy")


class MuSweep(Scenario):
    """Filtering small eigenvalues trades discarded weight for cost."""

    name = "mu_sweep"
    summary = "Kept modes, discarded weight, errors and thresholded cost vs mu"
    parameters_model = MuSweepParameters
    columns = (
        "mu",
        "kept_eigenvalue_count",
        "discarded_weight",
        "success_probability",
        "state_error",
        "classical_error",
        "residual",
        "cost_thresholded",
    )

    def grid(self, params: Any) -> list[Any]:
        return list(params.mus)

    def evaluate(self, params: Any, point: GridPoint) -> dict[str, Any]:
        matrix, d, b = _instance(point.base_seed, params.dim, params.condition)
        t = _time_scale(matrix, d, params.safety_factor)
        mu = float(point.value)
        cost = (
            hhl_cost(
                CostModel(M=params.dim, s=params.s, t=t, mu=mu, epsilon=params.epsilon),
                CostVariant.THRESHOLDED,
            )
            if mu > 0.0
            else math.inf
        )

        config = HhlConfig(t=t, clock_qubits=params.clock_qubits, mu=mu)
        try:
            result = hhl_ideal(matrix, b, config, d)
        except EmptySolutionError:
            logger.info(f"mu_sweep: every mode filtered at mu={mu}")
            return {
                "mu": mu,
                "kept_eigenvalue_count": 0,
                "discarded_weight": 1.0,
                "success_probability": 0.0,
                "state_error": math.nan,
                "classical_error": math.nan,
                "residual": float(np.linalg.norm(b)),
                "cost_thresholded": cost,
            }

        report = error_report(matrix, b, result, d)
        return {
            "mu": mu,
            "kept_eigenvalue_count": result.kept_eigenvalue_count,
            "discarded_weight": result.discarded_weight,
            "success_probability": result.success_probability,
            "state_error": report.state_error,
            "classical_error": report.classical_error,
            "residual": report.residual,
            "cost_thresholded": cost,
        }


# =============================================================================
# grid_refinement
# =============================================================================


class GridRefinementParameters(ScenarioParameters):
    clock_qubits: list[Annotated[int, Field(ge=3, le=12)]] = Field(
        default=[3, 4, 5, 6, 7, 8], description="Clock register sizes k"
    )
    dim: int = Field(default=4, ge=2, le=8, description="Matrix dimension")
    condition: float = Field(default=4.0, ge=1.0, description="Condition number of A")
    safety_factor: float = Field(
        default=SCENARIO_SAFETY_FACTOR, gt=0.0, lt=1.0, description="t = rho pi / |lambda_max|"
    )
    trials: int = Field(default=5, ge=1, description="Random instances per k")
    method: Literal["ideal", "circuit"] = Field(
        default="ideal", description="Analytic grid model or full circuit"
    )


class GridRefinement(Scenario):
    """Solution error shrinks as the clock grid is refined."""

    name = "grid_refinement"
    summary = "HHL state and classical error vs clock qubits k"
    parameters_model = GridRefinementParameters
    columns = (
        "clock_qubits",
        "grid_size",
        "mean_resolution",
        "mean_state_error",
        "max_state_error",
        "mean_classical_error",
        "max_decoding_ratio",
    )

    def grid(self, params: Any) -> list[Any]:
        return list(params.clock_qubits)

    def evaluate(self, params: Any, point: GridPoint) -> dict[str, Any]:
        k = int(point.value)
        solver = hhl_ideal if params.method == "ideal" else hhl_circuit
        state_errors, classical_errors, resolutions, ratios = [], [], [], []

        # Same instances for every k
        for trial_seed in spawn_seeds(point.base_seed, params.trials):
            matrix, d, b = _instance(trial_seed, params.dim, params.condition)
            t = _time_scale(matrix, d, params.safety_factor)
            config = HhlConfig(t=t, clock_qubits=k)
            result = solver(matrix, b, config, d)

            x = thresholded_solve(matrix, b, 0.0, d)
            x_unit = x / np.linalg.norm(x)
            state_errors.append(float(np.linalg.norm(x_unit - result.solution_vector)))
            classical_errors.append(float(np.linalg.norm(x - result.decoded_solution)))
            resolution = config.qpe.resolution
            resolutions.append(resolution)
            deviation = float(np.max(np.abs(result.eigenvalues - result.estimates)))
            ratios.append(deviation / resolution)

        return {
            "clock_qubits": k,
            "grid_size": 1 << k,
            "mean_resolution": float(np.mean(resolutions)),
            "mean_state_error": float(np.mean(state_errors)),
            "max_state_error": float(np.max(state_errors)),
            "mean_classical_error": float(np.mean(classical_errors)),
            "max_decoding_ratio": float(np.max(ratios)),
        }


# =============================================================================
# t_sweep
# =============================================================================


class TSweepParameters(ScenarioParameters):
    t_fractions: list[Annotated[float, Field(gt=0.0)]] = Field(
        default=[1.0, 0.5, 0.25], description="t as a fraction of t* = rho pi / lambda_max"
    )
    M: int = Field(default=1024, ge=2, description="System dimension")
    s: float = Field(default=1.0, gt=0.0, description="Sparseness")
    lambda_max: float = Field(default=1.0, gt=0.0, description="Largest |lambda| of A~")
    lambda_min: float = Field(default=0.1, gt=0.0, description="Smallest |lambda| of A~")
    epsilon: float = Field(default=0.01, gt=0.0, description="Simulation accuracy")
    safety_factor: float = Field(
        default=DEFAULT_SAFETY_FACTOR, gt=0.0, lt=1.0, description="Safety factor rho in t*"
    )


class TSweep(Scenario):
    """Shrinking t by a factor f multiplies the rescaled cost by f^2."""

    name = "t_sweep"
    summary = "Rescaled HHL cost vs time scale t"
    parameters_model = TSweepParameters
    columns = (
        "t_fraction",
        "t",
        "scaled_lambda_max",
        "cost_rescaled",
        "cost_ratio",
        "cost_thresholded",
    )

    def grid(self, params: Any) -> list[Any]:
        return list(params.t_fractions)

    def _cost(self, params: Any, t: float, variant: CostVariant) -> float:
        model = CostModel(
            M=params.M,
            s=params.s,
            t=t,
            lambda_min=params.lambda_min,
            mu=params.lambda_min,
            epsilon=params.epsilon,
        )
        return hhl_cost(model, variant)

    def evaluate(self, params: Any, point: GridPoint) -> dict[str, Any]:
        t_star = params.safety_factor * math.pi / params.lambda_max
        t = t_star * float(point.value)
        cost = self._cost(params, t, CostVariant.RESCALED)
        return {
            "t_fraction": float(point.value),
            "t": t,
            "scaled_lambda_max": params.lambda_max * t,
            "cost_rescaled": cost,
            "cost_ratio": cost / self._cost(params, t_star, CostVariant.RESCALED),
            "cost_thresholded": self._cost(params, t, CostVariant.THRESHOLDED),
        }


# =============================================================================
# trace_scaling
# =============================================================================


class TraceScalingParameters(ScenarioParameters):
    dims: list[Annotated[int, Field(ge=2)]] = Field(
        default=[16, 64, 256, 1024], description="Kernel sizes M"
    )
    shots: int = Field(default=10_000, ge=1, description="Shots per estimate")
    trials: int = Field(default=50, ge=1, description="Seeded trials per M")
    diagonal_mean: float = Field(default=1.0, gt=0.0, description="Mean of the kernel diagonal")
    diagonal_std: float = Field(
        default=0.5, gt=0.0, le=0.5, description="Std of the diagonal, relative to the mean"
    )


class TraceScaling(Scenario):
    """An accurate Tr(K)/M gives a Tr(K) error that grows with M."""

    name = "trace_scaling"
    summary = "Median trace-estimation error vs kernel size M"
    parameters_model = TraceScalingParameters
    columns = (
        "M",
        "shots",
        "median_normalized_error",
        "median_trace_error",
        "mean_trace_halfwidth",
        "exact_trace",
    )

    def grid(self, params: Any) -> list[Any]:
        return list(params.dims)

    def evaluate(self, params: Any, point: GridPoint) -> dict[str, Any]:
        m = int(point.value)
        seeds = spawn_seeds(point.seed, 2 * params.trials)
        normalized_errors, trace_errors, halfwidths = [], [], []
        exact = 0.0
        for diag_seed, shot_seed in zip(seeds[::2], seeds[1::2], strict=True):
            # Uniform on mean +- sqrt(3) std, positive while std <= mean / sqrt(3)
            u = make_rng(diag_seed).random(m)
            std = params.diagonal_std * params.diagonal_mean
            diagonal = params.diagonal_mean + std * math.sqrt(3.0) * (2.0 * u - 1.0)
            estimate = trace_estimate(HermitianMatrix.diagonal(diagonal), params.shots, shot_seed)
            normalized_errors.append(estimate.normalized.error)
            trace_errors.append(estimate.trace.error)
            halfwidths.append(estimate.trace.confidence_halfwidth)
            exact = float(estimate.trace.exact)

        return {
            "M": m,
            "shots": params.shots,
            "median_normalized_error": float(np.median(normalized_errors)),
            "median_trace_error": float(np.median(trace_errors)),
            "mean_trace_halfwidth": float(np.mean(halfwidths)),
            "exact_trace": exact,
        }


# =============================================================================
# classification_Z_scaling
# =============================================================================


class ClassificationScalingParameters(ScenarioParameters):
    z_factors: list[Annotated[float, Field(ge=1.0)]] = Field(
        default=[1.0, 2.0, 4.0, 8.0], description="Multiples of the base Z = 1"
    )
    dim: int = Field(default=4, ge=1, description="Vector dimension N")
    cluster_size: int = Field(default=4, ge=1, description="Cluster size M")
    shots: int = Field(default=10_000, ge=1, description="Shots per P estimate")
    z_hits: float = Field(
        default=1e7, gt=0.0, description="Expected |1> branch hits behind each Z estimate"
    )
    trials: int = Field(default=50, ge=1, description="Seeded trials per factor")
    t: float = Field(default=0.01, gt=0.0, description="Evolution time")
    spread: float = Field(
        default=2.0, gt=0.0, description="Spread of the points around their common center"
    )


class ClassificationScaling(Scenario):
    """The same P error becomes a Z^2-times larger distance error."""

    name = "classification_Z_scaling"
    summary = "Nearest-mean distance error vs Z at fixed shots"
    parameters_model = ClassificationScalingParameters
    columns = (
        "z_factor",
        "Z_cls",
        "z_shots",
        "median_p_error",
        "median_z_relative_error",
        "median_p_term_error",
        "median_distance_error",
        "median_distance",
        "max_identity_error",
    )

    def grid(self, params: Any) -> list[Any]:
        return list(params.z_factors)

    def _trial(self, params: Any, seed: int) -> tuple[np.ndarray, Dataset]:
        """Points scattered around a common center, scaled so that Z = 1."""
        rng = make_rng(seed)
        center = rng.standard_normal(params.dim)
        u = center + params.spread * rng.standard_normal(params.dim)
        cluster = center + params.spread * rng.standard_normal((params.cluster_size, params.dim))
        z = float(u @ u + np.mean(np.sum(cluster**2, axis=1)))
        scale = 1.0 / math.sqrt(z)
        return u * scale, Dataset(cluster * scale)

    def evaluate(self, params: Any, point: GridPoint) -> dict[str, Any]:
        factor = float(point.value)
        root = math.sqrt(factor)
        p_errors, z_errors, term_errors, distance_errors = [], [], [], []
        distances, identity_errors = [], []
        z_cls = 0.0
        # Z t^2 / 2 is the |1> branch probability; base Z is 1
        z_shots = math.ceil(2.0 * params.z_hits / (factor * params.t**2))

        # Common trial seeds across factors, so shot noise is shared
        seeds = spawn_seeds(point.base_seed, 2 * params.trials)
        for trial_seed, shot_seed in zip(seeds[::2], seeds[1::2], strict=True):
            u, cluster = self._trial(params, trial_seed)
            estimate = classification_distance(
                u * root,
                cluster.scaled(root),
                params.t,
                params.shots,
                shot_seed,
                z_shots=z_shots,
            )
            z_cls = estimate.z_cls
            p_errors.append(abs(estimate.p_estimate - estimate.p_exact))
            z_errors.append(estimate.z_relative_error)
            term_errors.append(estimate.p_term_error)
            distance_errors.append(estimate.distance_error)
            distances.append(estimate.distance)
            identity_errors.append(
                abs(2.0 * estimate.p_exact * estimate.z_cls**2 - estimate.distance)
            )

        return {
            "z_factor": factor,
            "Z_cls": z_cls,
            "z_shots": z_shots,
            "median_p_error": float(np.median(p_errors)),
            "median_z_relative_error": float(np.median(z_errors)),
            "median_p_term_error": float(np.median(term_errors)),
            "median_distance_error": float(np.median(distance_errors)),
            "median_distance": float(np.median(distances)),
            "max_identity_error": float(np.max(identity_errors)),
        }


# =============================================================================
# counting_relative_error
# =============================================================================


class CountingParameters(ScenarioParameters):
    N: int = Field(default=1 << 20, ge=1, description="Search space size")
    ks: list[Annotated[int, Field(ge=1)]] = Field(
        default=[1, 4, 16, 64, 256], description="Marked item counts K"
    )
    epsilon: float = Field(default=0.01, gt=0.0, description="Fixed relative accuracy")


class CountingRelativeError(Scenario):
    """Relative error 1/K turns sqrt(N/K)/eps into sqrt(N K)."""

    name = "counting_relative_error"
    summary = "Quantum counting cost at fixed and at 1/K relative error"
    parameters_model = CountingParameters
    columns = (
        "N",
        "K",
        "cost_fixed_epsilon",
        "relative_epsilon",
        "cost_relative",
        "sqrt_NK",
        "crossover_ratio",
    )

    def grid(self, params: Any) -> list[Any]:
        return list(params.ks)

    def evaluate(self, params: Any, point: GridPoint) -> dict[str, Any]:
        k = int(point.value)
        relative = 1.0 / k
        cost_relative = counting_cost(params.N, k, relative)
        sqrt_nk = math.sqrt(params.N * k)
        return {
            "N": params.N,
            "K": k,
            "cost_fixed_epsilon": counting_cost(params.N, k, params.epsilon),
            "relative_epsilon": relative,
            "cost_relative": cost_relative,
            "sqrt_NK": sqrt_nk,
            "crossover_ratio": cost_relative / sqrt_nk,
        }


# =============================================================================
# lowrank_t_over_M
# =============================================================================


class LowRankParameters(ScenarioParameters):
    dims: list[Annotated[int, Field(ge=2)]] = Field(
        default=[4, 16, 64, 256], description="System dimensions M"
    )
    s: float = Field(default=1.0, gt=0.0, description="Sparseness")
    lambda_min: float = Field(default=1.0, gt=0.0, description="Smallest |lambda| of A~")
    epsilon: float = Field(default=0.01, gt=0.0, description="Simulation accuracy")


class LowRankTOverM(Scenario):
    """Choosing t = 1/M makes the rescaled cost grow like M^2 log M."""

    name = "lowrank_t_over_M"
    summary = "Rescaled HHL cost with t = 1/M vs M"
    parameters_model = LowRankParameters
    columns = ("M", "t", "cost_rescaled", "cost_per_log_M", "normalized_cost")

    def grid(self, params: Any) -> list[Any]:
        return list(params.dims)

    def evaluate(self, params: Any, point: GridPoint) -> dict[str, Any]:
        m = int(point.value)
        t = 1.0 / m
        model = CostModel(
            M=m, s=params.s, t=t, lambda_min=params.lambda_min, epsilon=params.epsilon
        )
        cost = hhl_cost(model, CostVariant.RESCALED)
        per_log = cost / math.log(m)
        return {
            "M": m,
            "t": t,
            "cost_rescaled": cost,
            "cost_per_log_M": per_log,
            "normalized_cost": per_log / m**2,
        }


# =============================================================================
# Registry
# =============================================================================

_REGISTRY: dict[str, Scenario] = {
    scenario.name: scenario
    for scenario in (
        NormAmplification(),
        MuSweep(),
        GridRefinement(),
        TSweep(),
        TraceScaling(),
        ClassificationScaling(),
        CountingRelativeError(),
        LowRankTOverM(),
    )
}


class ExperimentSpec(BaseModel):
    """A scenario name, raw parameters and a seed."""

    model_config = ConfigDict(frozen=True)

    scenario: str
    parameters: dict[str, Any] = Field(default_factory=dict)
    seed: int = Field(default=DEFAULT_SEED, ge=0, le=MAX_SEED)


def list_scenarios() -> list[Scenario]:
    """Registered scenarios sorted by name."""
    return [_REGISTRY[name] for name in sorted(_REGISTRY)]


def get_scenario(name: str) -> Scenario:
    """
    Look up a scenario by name.

    Raises:
        UnknownScenarioError: If the name is not registered.
    """
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnknownScenarioError(name, sorted(_REGISTRY)) from None


def scaling_experiment(spec: ExperimentSpec, threads: int | None = None) -> ResultTable:
    """
    Run a registered scenario.

    Args:
        spec: Scenario name, parameters and seed.
        threads: Worker threads; defaults to the QCAVEAT_THREADS setting.

    Returns:
        ResultTable with one row per grid point, in grid order.
    """
    scenario = get_scenario(spec.scenario)
    params = scenario.parse(spec.parameters)
    workers = threads if threads is not None else get_settings().threads
    return scenario.run(params, spec.seed, max(1, workers))
