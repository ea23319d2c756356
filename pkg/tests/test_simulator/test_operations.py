"""Tests for circuit operations."""

import numpy as np
import pytest

from qcaveat.exceptions import (
    DimensionMismatchError,
    NonUnitaryError,
    NormalizationError,
    PostselectionError,
)
from qcaveat.linalg import random_unit_vector, random_unitary
from qcaveat.simulator import (
    RegisterLayout,
    apply_controlled_power,
    apply_controlled_swap,
    apply_unitary,
    hadamard,
    inverse_qft,
    measure,
    postselect,
    prepare_state,
    product_state,
    qft,
)
from qcaveat.simulator.operations import unitary_powers


def _basis(size: int, index: int) -> np.ndarray:
    v = np.zeros(size, dtype=complex)
    v[index] = 1.0
    return v


class TestPrepareState:
    """Tests for prepare_state and product_state."""

    def test_renormalizes_within_tolerance(self):
        """Test norms within 1e-8 of one are accepted."""
        state = prepare_state(RegisterLayout.of(q=1), [1.0 + 1e-9, 0.0])
        assert np.linalg.norm(state.amplitudes) == pytest.approx(1.0, abs=1e-15)

    def test_rejects_far_norm(self):
        """Test norms far from one need normalize=True."""
        layout = RegisterLayout.of(q=1)
        with pytest.raises(NormalizationError):
            prepare_state(layout, [1.0, 1.0])
        assert prepare_state(layout, [1.0, 1.0], normalize=True).amplitudes[0] == pytest.approx(
            1 / np.sqrt(2)
        )

    def test_rejects_zero(self):
        """Test the zero vector."""
        with pytest.raises(NormalizationError):
            prepare_state(RegisterLayout.of(q=1), [0.0, 0.0], normalize=True)

    def test_product_defaults_to_zero(self):
        """Test missing registers start in |0>."""
        layout = RegisterLayout.of(clock=2, system=1)
        state = product_state(layout, {"system": [0.0, 1.0]})
        assert np.allclose(state.amplitudes, _basis(8, 1))


class TestUnitaries:
    """Tests for apply_unitary and controlled powers."""

    def test_apply_on_one_register(self):
        """Test X on the second register."""
        layout = RegisterLayout.of(a=1, b=1)
        x = np.array([[0, 1], [1, 0]], dtype=complex)
        state = apply_unitary(product_state(layout, {}), x, "b")
        assert np.allclose(state.amplitudes, _basis(4, 1))

    def test_rejects_non_unitary(self):
        """Test unitarity is checked at 1e-10."""
        layout = RegisterLayout.of(a=1)
        with pytest.raises(NonUnitaryError):
            apply_unitary(product_state(layout, {}), np.diag([1.0, 1.1]), "a")

    def test_rejects_wrong_shape(self):
        """Test the operator must match the register."""
        layout = RegisterLayout.of(a=1)
        with pytest.raises(DimensionMismatchError):
            apply_unitary(product_state(layout, {}), np.eye(4), "a")

    def test_unitary_powers(self, rng):
        """Test repeated squaring matches matrix_power."""
        u = random_unitary(3, rng)
        powers = unitary_powers(u, 8)
        for x in range(8):
            assert np.allclose(powers[x], np.linalg.matrix_power(u, x), atol=1e-12)

    def test_controlled_power_phase(self):
        """Test |x>|u> picks up exp(i x phi) for an eigenvector."""
        layout = RegisterLayout.of(clock=2, system=1)
        phi = 0.3
        u = np.diag(np.exp(1j * np.array([phi, -phi])))
        state = product_state(layout, {"clock": [0.5, 0.5, 0.5, 0.5], "system": [1.0, 0.0]})
        out = apply_controlled_power(state, u, "clock", "system")
        expected = 0.5 * np.exp(1j * phi * np.arange(4))
        assert np.allclose(out.project({"system": 0}), expected)

    def test_controlled_power_then_inverse(self, rng):
        """Test controlled U followed by controlled U dagger restores the state."""
        layout = RegisterLayout.of(clock=2, system=2)
        state = prepare_state(layout, random_unit_vector(16, rng))
        u = random_unitary(4, rng)
        forward = apply_controlled_power(state, u, "clock", "system")
        back = apply_controlled_power(forward, u.conj().T, "clock", "system")
        assert np.allclose(back.amplitudes, state.amplitudes, atol=1e-12)


class TestTransforms:
    """Tests for Fourier and Hadamard transforms."""

    def test_inverse_qft_of_uniform(self):
        """Test the uniform superposition maps to |0>."""
        layout = RegisterLayout.of(clock=3)
        state = prepare_state(layout, np.full(8, 1 / np.sqrt(8)))
        assert np.allclose(inverse_qft(state, "clock").amplitudes, _basis(8, 0), atol=1e-12)

    def test_qft_inverts(self, rng):
        """Test qft undoes inverse_qft."""
        layout = RegisterLayout.of(clock=3, system=1)
        z = rng.standard_normal(16) + 1j * rng.standard_normal(16)
        state = prepare_state(layout, z, normalize=True)
        back = qft(inverse_qft(state, "clock"), "clock")
        assert np.allclose(back.amplitudes, state.amplitudes, atol=1e-12)

    def test_inverse_qft_decodes_phase(self):
        """Test a Fourier-encoded integer is recovered."""
        n, y0 = 8, 3
        encoded = np.exp(2j * np.pi * y0 * np.arange(n) / n) / np.sqrt(n)
        state = prepare_state(RegisterLayout.of(clock=3), encoded)
        assert measure(inverse_qft(state, "clock"), "clock")[y0] == pytest.approx(1.0)

    def test_hadamard_uniform(self):
        """Test H^n |0> is uniform."""
        state = hadamard(product_state(RegisterLayout.of(r=2), {}), "r")
        assert np.allclose(state.amplitudes, np.full(4, 0.5))


class TestControlledSwap:
    """Tests for apply_controlled_swap."""

    def test_swaps_only_on_one(self):
        """Test |1>|0>|1> becomes |1>|1>|0> and |0> branches are untouched."""
        layout = RegisterLayout.of(c=1, a=1, b=1)
        state = product_state(layout, {"c": [1.0, 1.0], "b": [0.0, 1.0]})
        out = apply_controlled_swap(state, "c", "a", "b")
        # |0>|0>|1> stays, |1>|0>|1> -> |1>|1>|0>
        assert out.tensor[0, 0, 1] == pytest.approx(1 / np.sqrt(2))
        assert out.tensor[1, 1, 0] == pytest.approx(1 / np.sqrt(2))
        assert abs(out.tensor[1, 0, 1]) < 1e-15

    def test_control_after_targets(self):
        """Test the control may sit after the swapped registers."""
        layout = RegisterLayout.of(a=1, b=1, c=1)
        state = product_state(layout, {"a": [0.0, 1.0], "c": [0.0, 1.0]})
        out = apply_controlled_swap(state, "c", "a", "b")
        assert out.tensor[0, 1, 1] == pytest.approx(1.0)

    def test_width_mismatch(self):
        """Test swapped registers must have equal width."""
        layout = RegisterLayout.of(c=1, a=1, b=2)
        with pytest.raises(DimensionMismatchError):
            apply_controlled_swap(product_state(layout, {}), "c", "a", "b")


class TestMeasurement:
    """Tests for measure and postselect."""

    def test_marginal(self):
        """Test a marginal distribution."""
        layout = RegisterLayout.of(a=1, b=1)
        state = prepare_state(layout, [0.6, 0.0, 0.0, 0.8])
        table = measure(state, "a")
        assert table[0] == pytest.approx(0.36)
        assert table[1] == pytest.approx(0.64)
        assert table.peak == 1

    def test_postselect_collapses(self):
        """Test the post-measurement state is renormalized."""
        layout = RegisterLayout.of(a=1, b=1)
        state = prepare_state(layout, [0.6, 0.0, 0.0, 0.8])
        record = postselect(state, "a", 0)
        assert record.probability == pytest.approx(0.36)
        assert np.allclose(record.post_state.amplitudes, _basis(4, 0))

    def test_postselect_floor(self):
        """Test impossible outcomes raise."""
        layout = RegisterLayout.of(a=1)
        state = prepare_state(layout, [1.0, 0.0])
        with pytest.raises(PostselectionError):
            postselect(state, "a", 1)

    def test_marginal_ignores_register_order(self, rng):
        """Test reordering the other registers leaves a marginal unchanged."""
        tensor = random_unit_vector(16, rng).reshape(2, 4, 2)
        state = prepare_state(RegisterLayout.of(a=1, b=2, c=1), tensor.reshape(-1))
        acb = prepare_state(
            RegisterLayout.of(a=1, c=1, b=2), tensor.transpose(0, 2, 1).reshape(-1)
        )
        bca = prepare_state(
            RegisterLayout.of(b=2, c=1, a=1), tensor.transpose(1, 2, 0).reshape(-1)
        )
        for name in ("a", "b"):
            expected = measure(state, name).probabilities
            assert np.allclose(measure(acb, name).probabilities, expected, atol=1e-14)
            assert np.allclose(measure(bca, name).probabilities, expected, atol=1e-14)
