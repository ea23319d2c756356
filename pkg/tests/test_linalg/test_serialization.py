"""Tests for the matrix and vector JSON schema."""

import json

import numpy as np
import pytest

from qcaveat.exceptions import ConfigParseError, NotHermitianError
from qcaveat.linalg import matrix_from_json, matrix_to_json, vector_from_json, vector_to_json


class TestMatrixJson:
    """Tests for matrix serialization."""

    def test_schema_fields(self, pauli_x):
        """Test the documented keys."""
        document = json.loads(matrix_to_json(pauli_x))
        assert document["dim"] == 2
        assert document["re"] == [[0.0, 1.0], [1.0, 0.0]]
        assert document["im"] == [[0.0, 0.0], [0.0, 0.0]]

    def test_restores_matrix(self, dense_matrix):
        """Test a dumped matrix loads back exactly."""
        restored = matrix_from_json(matrix_to_json(dense_matrix))
        assert np.array_equal(restored.entries, dense_matrix.entries)

    def test_reads_path(self, tmp_path, pauli_x):
        """Test loading from a file path."""
        path = tmp_path / "a.json"
        path.write_text(matrix_to_json(pauli_x), encoding="utf-8")
        assert matrix_from_json(path).dim == 2

    def test_wrong_shape(self):
        """Test shape mismatches are parse errors."""
        with pytest.raises(ConfigParseError):
            matrix_from_json('{"dim": 2, "re": [[1.0]], "im": [[0.0]]}')

    def test_extra_key_names_field(self):
        """Test unknown keys are rejected by name."""
        text = '{"dim": 1, "re": [[1.0]], "im": [[0.0]], "scale": 2}'
        with pytest.raises(ConfigParseError) as exc_info:
            matrix_from_json(text)
        assert exc_info.value.field == "scale"

    def test_not_hermitian(self):
        """Test a well-formed but non-Hermitian matrix."""
        text = '{"dim": 2, "re": [[1.0, 2.0], [0.0, 1.0]], "im": [[0.0, 0.0], [0.0, 0.0]]}'
        with pytest.raises(NotHermitianError):
            matrix_from_json(text)


class TestVectorJson:
    """Tests for vector serialization."""

    def test_complex_vector(self):
        """Test real and imaginary parts survive."""
        v = np.array([1.0 + 2.0j, -0.5j])
        assert np.array_equal(vector_from_json(vector_to_json(v)), v)

    def test_length_mismatch(self):
        """Test re/im lengths must match dim."""
        with pytest.raises(ConfigParseError):
            vector_from_json('{"dim": 2, "re": [1.0, 2.0], "im": [0.0]}')
