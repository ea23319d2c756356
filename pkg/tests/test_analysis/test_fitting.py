"""Tests for scaling-law fits."""

import numpy as np
import pytest

from qcaveat.analysis import loglog_slope
from qcaveat.exceptions import AnalysisError


class TestLoglogSlope:
    """Tests for loglog_slope."""

    @pytest.mark.parametrize("power", [-2.0, 0.5, 1.0, 3.0])
    def test_power_law(self, power):
        """Test the exponent of an exact power law."""
        x = np.array([1.0, 2.0, 4.0, 8.0, 16.0])
        assert loglog_slope(x, 3.0 * x**power) == pytest.approx(power)

    def test_rejects_non_positive(self):
        """Test zero and negative values."""
        with pytest.raises(AnalysisError):
            loglog_slope([1.0, 2.0], [0.0, 1.0])

    def test_rejects_single_point(self):
        """Test too few points."""
        with pytest.raises(AnalysisError):
            loglog_slope([1.0], [1.0])

    def test_rejects_length_mismatch(self):
        """Test unpaired inputs."""
        with pytest.raises(AnalysisError):
            loglog_slope([1.0, 2.0, 3.0], [1.0, 2.0])
