"""Tests for formatting utilities."""

import numpy as np

from qcaveat.utils.formatting import format_cell, format_float, format_metric, truncate_text


class TestFormatFloat:
    """Tests for format_float."""

    def test_round_trips(self):
        """Test that the text parses back to the same float."""
        for value in [0.1, 1 / 3, 2.5e-17, 123456789.125]:
            assert float(format_float(value)) == value

    def test_non_finite(self):
        """Test nan and infinities."""
        assert format_float(float("nan")) == "nan"
        assert format_float(float("inf")) == "inf"
        assert format_float(float("-inf")) == "-inf"


class TestFormatCell:
    """Tests for format_cell."""

    def test_numpy_scalars(self):
        """Test numpy ints and floats format like Python ones."""
        assert format_cell(np.int64(7)) == "7"
        assert format_cell(np.float64(0.5)) == "0.5"

    def test_booleans(self):
        """Test booleans are lowercase words."""
        assert format_cell(True) == "true"
        assert format_cell(np.bool_(False)) == "false"

    def test_strings_pass_through(self):
        """Test strings are unchanged."""
        assert format_cell("ideal") == "ideal"


class TestFormatMetric:
    """Tests for format_metric."""

    def test_scientific_for_small_values(self):
        """Test small magnitudes use scientific notation."""
        assert format_metric(1.5e-6) == "1.500e-06"

    def test_plain_for_moderate_values(self):
        """Test moderate magnitudes use general format."""
        assert format_metric(0.25) == "0.25"

    def test_integers(self):
        """Test integers."""
        assert format_metric(1024) == "1024"


class TestTruncateText:
    """Tests for truncate_text."""

    def test_short_text_unchanged(self):
        """Test text below the limit."""
        assert truncate_text("abc", max_length=10) == "abc"

    def test_long_text_truncated(self):
        """Test text above the limit."""
        result = truncate_text("a" * 20, max_length=10)
        assert len(result) == 10
        assert result.endswith("...")

    def test_empty(self):
        """Test empty input."""
        assert truncate_text("") == ""
