"""Tests for the scenario registry and the scaling experiments."""

import math

import numpy as np
import pytest

from qcaveat.analysis import (
    ExperimentSpec,
    get_scenario,
    list_scenarios,
    loglog_slope,
    scaling_experiment,
)
from qcaveat.exceptions import AnalysisError, ConfigParseError, UnknownScenarioError

SCENARIO_NAMES = [
    "classification_Z_scaling",
    "counting_relative_error",
    "grid_refinement",
    "lowrank_t_over_M",
    "mu_sweep",
    "norm_amplification",
    "t_sweep",
    "trace_scaling",
]


def _run(name, seed=7, threads=1, **parameters):
    spec = ExperimentSpec(scenario=name, parameters=parameters, seed=seed)
    return scaling_experiment(spec, threads=threads)


class TestRegistry:
    """Tests for scenario lookup and parameter parsing."""

    def test_sorted_names(self):
        """Test that every scenario is registered, sorted by name."""
        assert [s.name for s in list_scenarios()] == SCENARIO_NAMES

    def test_unknown_scenario(self):
        """Test the error for an unregistered name."""
        with pytest.raises(UnknownScenarioError) as exc_info:
            get_scenario("nope")
        assert exc_info.value.field == "scenario.name"
        assert "t_sweep" in str(exc_info.value)

    def test_parse_comma_separated_list(self):
        """Test list parameters given as text."""
        params = get_scenario("t_sweep").parse({"t_fractions": "1, 0.5", "M": "64"})
        assert params.t_fractions == [1.0, 0.5]
        assert params.M == 64

    def test_parse_unknown_key(self):
        """Test that unknown parameters name the key."""
        with pytest.raises(ConfigParseError) as exc_info:
            get_scenario("t_sweep").parse({"bogus": "1"})
        assert exc_info.value.field == "parameters.bogus"

    def test_parse_invalid_value(self):
        """Test that invalid values name the parameter."""
        with pytest.raises(ConfigParseError) as exc_info:
            get_scenario("norm_amplification").parse({"x_norms": "1, -2"})
        assert exc_info.value.field.startswith("parameters.x_norms")

    def test_grid_refinement_needs_three_clock_qubits(self):
        """Test the lower bound on k."""
        with pytest.raises(ConfigParseError):
            get_scenario("grid_refinement").parse({"clock_qubits": "2, 3"})

    @pytest.mark.parametrize("name", SCENARIO_NAMES)
    def test_parameter_docs(self, name):
        """Test that every parameter is documented with a default."""
        scenario = get_scenario(name)
        docs = scenario.parameter_docs()
        assert [d["name"] for d in docs] == list(scenario.parameters_model.model_fields)
        assert all(d["description"] for d in docs)
        assert all(d["default"] for d in docs)


class TestRunner:
    """Tests for determinism and threading."""

    def test_same_seed_same_rows(self):
        """Test that runs are reproducible."""
        first = _run("grid_refinement", clock_qubits="3, 4", trials="2")
        second = _run("grid_refinement", clock_qubits="3, 4", trials="2")
        assert first.rows == second.rows

    def test_threads_match_serial(self):
        """Test that worker threads do not change rows or their order."""
        serial = _run("norm_amplification", threads=1)
        threaded = _run("norm_amplification", threads=4)
        assert threaded.rows == serial.rows

    def test_threads_from_settings(self, monkeypatch):
        """Test the QCAVEAT_THREADS default."""
        monkeypatch.setenv("QCAVEAT_THREADS", "3")
        spec = ExperimentSpec(scenario="counting_relative_error")
        assert len(scaling_experiment(spec)) == 5

    def test_column_contract(self, monkeypatch):
        """Test that a row with wrong columns is rejected."""
        scenario = get_scenario("counting_relative_error")
        monkeypatch.setattr(scenario, "evaluate", lambda params, point: {"N": 1})
        with pytest.raises(AnalysisError):
            scenario.run(scenario.defaults(), seed=0)

    def test_table_column_access(self):
        """Test ResultTable.column."""
        table = _run("counting_relative_error")
        np.testing.assert_array_equal(table.column("K"), [1, 4, 16, 64, 256])
        with pytest.raises(KeyError):
            table.column("missing")


class TestScenarios:
    """Tests for the behaviour each scenario demonstrates."""

    def test_t_sweep_ratios(self):
        """Test cost ratios 1, 4, 16 for t fractions 1, 1/2, 1/4."""
        table = _run("t_sweep")
        np.testing.assert_allclose(table.column("cost_ratio"), [1.0, 4.0, 16.0])
        np.testing.assert_allclose(
            table.column("cost_thresholded"), table.column("cost_rescaled")
        )

    def test_norm_amplification_is_linear_in_x_norm(self):
        """Test classical error proportional to |x| at a fixed state error."""
        table = _run("norm_amplification")
        state = table.column("state_error")
        np.testing.assert_allclose(state, state[0], rtol=1e-8)
        np.testing.assert_allclose(table.column("x_norm"), [1.0, 10.0, 100.0, 1000.0])
        slope = loglog_slope(table.column("x_norm"), table.column("classical_error"))
        assert slope == pytest.approx(1.0, abs=1e-6)

    def test_mu_sweep(self):
        """Test monotone filtering and the all-filtered row."""
        table = _run("mu_sweep", mus="0, 0.05, 0.1, 0.2, 0.5, 100")
        kept = table.column("kept_eigenvalue_count")
        discarded = table.column("discarded_weight")
        assert np.all(np.diff(kept) <= 0)
        assert np.all(np.diff(discarded) >= -1e-12)
        assert math.isinf(table.rows[0]["cost_thresholded"])

        last = table.rows[-1]
        assert last["kept_eigenvalue_count"] == 0
        assert last["discarded_weight"] == 1.0
        assert math.isnan(last["state_error"])
        assert last["residual"] == pytest.approx(1.0)

    def test_grid_refinement(self):
        """Test decoding within resolution and halving resolution per qubit."""
        table = _run("grid_refinement", clock_qubits="3, 4, 6", trials="2")
        np.testing.assert_array_equal(table.column("grid_size"), [8, 16, 64])
        assert np.all(table.column("max_decoding_ratio") <= 1.0 + 1e-9)
        resolution = table.column("mean_resolution")
        assert resolution[0] / resolution[1] == pytest.approx(2.0)
        assert resolution[0] / resolution[2] == pytest.approx(8.0)

    def test_grid_refinement_circuit_matches_shape(self):
        """Test the circuit method on a small grid."""
        table = _run("grid_refinement", clock_qubits="3", trials="1", dim="2", method="circuit")
        assert len(table) == 1
        assert table.rows[0]["max_decoding_ratio"] <= 1.0 + 1e-9

    def test_trace_scaling(self):
        """Test that the trace error is M times the normalized error."""
        table = _run("trace_scaling", dims="16, 256", shots="1000", trials="5")
        # Diagonal entries lie in 1 +- sqrt(3) / 2
        ratio = table.column("exact_trace") / table.column("M")
        assert np.all((ratio > 1.0 - math.sqrt(3.0) / 2.0) & (ratio < 1.0 + math.sqrt(3.0) / 2.0))
        np.testing.assert_allclose(
            table.column("median_trace_error"),
            table.column("M") * table.column("median_normalized_error"),
        )

    def test_classification_scaling(self):
        """Test Z tracking the factor and the distance identity."""
        table = _run(
            "classification_Z_scaling", z_factors="1, 4", trials="3", shots="1000"
        )
        np.testing.assert_allclose(table.column("Z_cls"), [1.0, 4.0])
        assert np.all(table.column("max_identity_error") <= 1e-12)

    def test_counting_crossover(self):
        """Test that relative error 1/K costs exactly sqrt(N K)."""
        table = _run("counting_relative_error")
        np.testing.assert_allclose(table.column("crossover_ratio"), 1.0)
        np.testing.assert_allclose(table.column("cost_relative"), table.column("sqrt_NK"))

    def test_lowrank_cost(self):
        """Test cost / (M^2 log M) constant for t = 1/M."""
        table = _run("lowrank_t_over_M")
        np.testing.assert_allclose(table.column("normalized_cost"), 100.0)
        np.testing.assert_allclose(table.column("t"), 1.0 / table.column("M"))

    def test_trace_error_grows_linearly_in_m(self):
        """Test the default grid: median trace error slope 1 in M at fixed shots."""
        table = _run("trace_scaling", seed=2024)
        slope = loglog_slope(table.column("M"), table.column("median_trace_error"))
        assert slope == pytest.approx(1.0, abs=0.15)

    def test_trace_scaling_completes_on_default_grid(self):
        """Test the default kernel sizes over several seeds keep the kernel PSD."""
        for seed in range(5):
            table = _run("trace_scaling", seed=seed, trials="10")
            assert list(table.column("M")) == [16, 64, 256, 1024]
            assert np.all(table.column("exact_trace") > 0.0)
            assert np.all(np.isfinite(table.column("median_trace_error")))

    def test_distance_error_grows_like_z_squared(self):
        """Test the default grid: distance error 2 P^ Z^^2 - d has slope 2 in Z."""
        table = _run("classification_Z_scaling", seed=2024)
        slope = loglog_slope(table.column("Z_cls"), table.column("median_distance_error"))
        assert slope == pytest.approx(2.0, abs=0.2)

    def test_z_estimate_is_not_the_bottleneck(self):
        """Test the Z shot budget keeps Z^ within a fraction of a percent."""
        table = _run("classification_Z_scaling", seed=2024, trials="10")
        assert np.all(table.column("median_z_relative_error") < 5e-3)
        np.testing.assert_allclose(
            table.column("z_shots") * table.column("Z_cls") * 0.01**2 / 2.0, 1e7, rtol=1e-6
        )
