"""Tests for the shot-noise estimators."""

import math

import numpy as np
import pytest

from qcaveat.exceptions import (
    DimensionMismatchError,
    NormalizationError,
    NormTooLargeError,
    PreconditionError,
)
from qcaveat.hhl import HhlConfig
from qcaveat.linalg import HermitianMatrix, random_unit_vector
from qcaveat.qml import (
    Dataset,
    build_lssvm_system,
    classification_distance,
    classification_state,
    hadamard_test,
    regression_predict,
    swap_test,
    swap_test_acceptance,
    trace_estimate,
)
from qcaveat.utils.rng import spawn_seeds

# F^dagger F = diag(1, 0.25) sits on the k=4 grid for t = pi/2
REGRESSION_DATA = np.diag([1.0, 0.5])
REGRESSION_CONFIG = HhlConfig(t=math.pi / 2, clock_qubits=4)


class TestSwapTest:
    """Tests for the swap test."""

    def test_acceptance_identity(self, rng):
        """Test P(0) = 1/2 + |<a|b>|^2 / 2 on random states."""
        for _ in range(10):
            a = random_unit_vector(4, rng)
            b = random_unit_vector(4, rng)
            expected = 0.5 + abs(np.vdot(a, b)) ** 2 / 2.0
            assert swap_test_acceptance(a, b) == pytest.approx(expected, abs=1e-12)

    def test_non_power_of_two_dimension(self, rng):
        """Test padding of a three-dimensional state."""
        a = random_unit_vector(3, rng)
        assert swap_test_acceptance(a, a) == pytest.approx(1.0)

    def test_calibration(self, rng):
        """Test that the Hoeffding halfwidth covers the exact overlap."""
        a = random_unit_vector(4, rng)
        b = random_unit_vector(4, rng)
        covered = 0
        for seed in spawn_seeds(99, 100):
            estimate = swap_test(a, b, shots=10_000, seed=seed)
            covered += estimate.error <= estimate.confidence_halfwidth
        assert covered >= 93

    def test_unclamped_estimate_is_unbiased(self):
        """Test the mean raw estimate over 10^3 seeds matches the exact overlap."""
        a = np.array([1.0, 0.0])
        b = np.array([1.0, 1.0]) / math.sqrt(2.0)
        shots = 1000
        raw = [swap_test(a, b, shots, seed).unclamped for seed in spawn_seeds(7, 1000)]
        sigma_mean = 2.0 * math.sqrt(0.75 * 0.25 / shots) / math.sqrt(len(raw))
        assert abs(float(np.mean(raw)) - 0.5) <= 4.0 * sigma_mean

    def test_same_seed_same_estimate(self, rng):
        """Test reproducibility."""
        a = random_unit_vector(2, rng)
        b = random_unit_vector(2, rng)
        assert swap_test(a, b, 500, 3) == swap_test(a, b, 500, 3)

    def test_value_is_clamped(self):
        """Test that orthogonal states never yield a negative overlap."""
        estimate = swap_test([1.0, 0.0], [0.0, 1.0], shots=10, seed=1)
        assert 0.0 <= estimate.value <= 1.0
        assert estimate.exact == pytest.approx(0.0)

    def test_rejects_unnormalized(self):
        """Test that inputs must be unit vectors."""
        with pytest.raises(NormalizationError):
            swap_test([1.0, 1.0], [1.0, 0.0], 10, 0)

    def test_rejects_dimension_mismatch(self):
        """Test vectors of different lengths."""
        with pytest.raises(DimensionMismatchError):
            swap_test([1.0, 0.0], [1.0, 0.0, 0.0], 10, 0)


class TestHadamardTest:
    """Tests for the Hadamard test."""

    def test_real_and_imaginary_parts(self, rng):
        """Test the exact values against <a|b>."""
        a = random_unit_vector(4, rng)
        b = random_unit_vector(4, rng)
        overlap = np.vdot(a, b)
        real = hadamard_test(a, b, 100, 0, "real")
        imag = hadamard_test(a, b, 100, 0, "imag")
        assert real.exact == pytest.approx(overlap.real, abs=1e-12)
        assert imag.exact == pytest.approx(overlap.imag, abs=1e-12)

    def test_calibration(self, rng):
        """Test that the Hoeffding halfwidth covers the exact real part."""
        a = random_unit_vector(2, rng)
        b = random_unit_vector(2, rng)
        estimates = [hadamard_test(a, b, 10_000, seed, "real") for seed in spawn_seeds(5, 20)]
        assert sum(e.error <= e.confidence_halfwidth for e in estimates) >= 18
        assert all(-1.0 <= e.value <= 1.0 for e in estimates)


class TestRegressionPredict:
    """Tests for regression_predict."""

    def test_exact_overlaps_on_grid(self):
        """Test that an on-grid system with exact overlaps predicts c . x."""
        result = regression_predict(REGRESSION_DATA, [1.0, 1.0], [1.0, 1.0], REGRESSION_CONFIG, 0)
        assert result.exact == pytest.approx(3.0)
        assert result.prediction == pytest.approx(3.0, abs=1e-9)
        assert result.state_error == pytest.approx(0.0, abs=1e-9)
        assert result.amplification == pytest.approx(math.sqrt(2.0) * math.sqrt(5.0))

    def test_shot_noise_is_amplified(self):
        """Test that sampled overlaps give a small but nonzero error."""
        result = regression_predict(
            REGRESSION_DATA, [1.0, 1.0], [1.0, 1.0], REGRESSION_CONFIG, shots=100_000, seed=5
        )
        assert result.prediction_error < 0.2
        again = regression_predict(
            REGRESSION_DATA, [1.0, 1.0], [1.0, 1.0], REGRESSION_CONFIG, shots=100_000, seed=5
        )
        assert again.prediction == result.prediction

    def test_rejects_wrong_query_length(self):
        """Test c with the wrong number of entries."""
        with pytest.raises(DimensionMismatchError):
            regression_predict(REGRESSION_DATA, [1.0, 1.0], [1.0], REGRESSION_CONFIG, 0)

    def test_rejects_zero_query(self):
        """Test c = 0."""
        with pytest.raises(NormalizationError):
            regression_predict(REGRESSION_DATA, [1.0, 1.0], [0.0, 0.0], REGRESSION_CONFIG, 0)


class TestClassificationDistance:
    """Tests for classification_distance."""

    @pytest.fixture
    def cluster(self) -> Dataset:
        return Dataset([[0.5, 0.2], [0.3, -0.4], [0.6, 0.1]])

    def test_exact_identity(self, cluster):
        """Test |u - mean|^2 = 2 P Z^2 with exact estimates."""
        u = np.array([0.4, 0.7])
        estimate = classification_distance(u, cluster, t=0.01, shots=0, seed=0)

        expected = float(np.linalg.norm(u - cluster.mean) ** 2)
        assert estimate.distance == pytest.approx(expected)
        assert 2.0 * estimate.p_exact * estimate.z_cls**2 == pytest.approx(expected)
        assert estimate.distance_estimate == pytest.approx(expected)
        assert estimate.distance_error == pytest.approx(0.0, abs=1e-12)

    def test_branch_probability_first_order(self, cluster):
        """Test the |1> branch probability against Z t^2 / 2."""
        estimate = classification_distance([0.4, 0.7], cluster, t=0.01, shots=0, seed=0)
        assert estimate.branch_probability == pytest.approx(
            estimate.branch_probability_first_order, rel=1e-3
        )
        assert estimate.preparation_fidelity > 1.0 - 1e-6

    def test_state_is_normalized(self, cluster):
        """Test the prepared state's norm."""
        state = classification_state([0.4, 0.7], cluster, 0.05)
        assert state.size == 2 * (cluster.size + 1)
        assert np.linalg.norm(state) == pytest.approx(1.0)

    def test_sampled_estimate(self, cluster):
        """Test that sampling gives a bounded P estimate and the amplified term."""
        estimate = classification_distance([0.4, 0.7], cluster, t=0.01, shots=10_000, seed=4)
        assert 0.0 <= estimate.p_estimate <= 1.0
        assert estimate.p_term_error == pytest.approx(
            2.0 * estimate.z_cls**2 * abs(estimate.p_estimate - estimate.p_exact)
        )

    def test_separate_z_shots(self, cluster):
        """Test Z can be exact or sampled with its own shot count."""
        u = [0.4, 0.7]
        exact_z = classification_distance(u, cluster, t=0.01, shots=1000, seed=4, z_shots=0)
        assert exact_z.z_shots == 0
        assert exact_z.z_estimate == exact_z.z_cls
        assert exact_z.z_relative_error == 0.0

        sampled = classification_distance(u, cluster, t=0.01, shots=1000, seed=4, z_shots=10**12)
        assert sampled.z_shots == 10**12
        assert sampled.p_estimate == exact_z.p_estimate
        assert sampled.z_relative_error < 5e-3

        with pytest.raises(PreconditionError):
            classification_distance(u, cluster, t=0.01, shots=1000, seed=4, z_shots=-1)

    def test_norm_too_large(self, cluster):
        """Test t * max norm above the cap."""
        with pytest.raises(NormTooLargeError):
            classification_distance([0.4, 0.7], cluster, t=1.0, shots=0, seed=0)

    def test_p_above_one(self):
        """Test data too small for P to be a probability."""
        with pytest.raises(PreconditionError, match="exceeds 1"):
            classification_distance([0.1, 0.0], Dataset([[-0.1, 0.0]]), t=0.01, shots=0, seed=0)

    def test_dimension_mismatch(self, cluster):
        """Test u of the wrong dimension."""
        with pytest.raises(DimensionMismatchError):
            classification_distance([0.4], cluster, t=0.01, shots=0, seed=0)


class TestTraceEstimate:
    """Tests for trace_estimate."""

    def test_trace_error_scales_with_dimension(self, rng):
        """Test Tr(K) = M Tr(K)/M for value, exact and halfwidth."""
        kernel = HermitianMatrix.diagonal(rng.uniform(0.5, 1.5, size=64))
        estimate = trace_estimate(kernel, shots=10_000, seed=8)

        assert estimate.dim == 64
        assert estimate.trace.exact == pytest.approx(float(np.trace(kernel.entries).real))
        assert estimate.trace.value == pytest.approx(64 * estimate.normalized.value)
        assert estimate.trace.error == pytest.approx(64 * estimate.normalized.error)
        assert estimate.trace.confidence_halfwidth == pytest.approx(
            64 * estimate.normalized.confidence_halfwidth
        )
        assert estimate.normalized.error <= estimate.normalized.confidence_halfwidth

    def test_dense_kernel(self):
        """Test a positive semidefinite Gram matrix."""
        kernel = HermitianMatrix(np.array([[2.0, 1.0], [1.0, 2.0]], dtype=complex))
        estimate = trace_estimate(kernel, shots=10, seed=0)
        assert estimate.normalized.value == pytest.approx(2.0)

    def test_rejects_indefinite(self):
        """Test a kernel with a negative eigenvalue."""
        with pytest.raises(PreconditionError):
            trace_estimate(HermitianMatrix.diagonal([1.0, -1.0]), 10, 0)

    def test_rejects_zero_shots(self):
        """Test shots must be positive."""
        with pytest.raises(PreconditionError):
            trace_estimate(HermitianMatrix.identity(2), 0, 0)


class TestBuildLssvmSystem:
    """Tests for build_lssvm_system."""

    def test_block_structure(self):
        """Test F = [[0, 1^T], [1, K + I/gamma]] and rhs (0, y)."""
        data = Dataset([[1.0, 0.0], [0.0, 2.0]])
        matrix, rhs = build_lssvm_system(data, [1.0, -1.0], gamma=2.0)

        expected = np.array([[0.0, 1.0, 1.0], [1.0, 1.5, 0.0], [1.0, 0.0, 4.5]])
        np.testing.assert_allclose(matrix.entries, expected)
        np.testing.assert_allclose(rhs, [0.0, 1.0, -1.0])

    def test_rejects_non_positive_gamma(self):
        """Test gamma must be positive."""
        with pytest.raises(PreconditionError):
            build_lssvm_system(Dataset([[1.0]]), [1.0], gamma=0.0)

    def test_rejects_target_count(self):
        """Test one target per data point."""
        with pytest.raises(DimensionMismatchError):
            build_lssvm_system(Dataset([[1.0], [2.0]]), [1.0], gamma=1.0)
