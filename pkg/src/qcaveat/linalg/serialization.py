"""JSON schema for matrices and vectors.

Matrices serialize as {"dim": M, "re": [[...]], "im": [[...]]} and vectors as
{"dim": M, "re": [...], "im": [...]}.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from qcaveat.exceptions import ConfigParseError
from qcaveat.linalg.matrices import HermitianMatrix, as_vector


class MatrixRecord(BaseModel):
    """Serialized dense complex matrix."""

    model_config = ConfigDict(extra="forbid")

    dim: int
    re: list[list[float]]
    im: list[list[float]]

    @model_validator(mode="after")
    def check_shape(self) -> MatrixRecord:
        """Both parts must be dim x dim."""
        for part_name, part in (("re", self.re), ("im", self.im)):
            if len(part) != self.dim or any(len(row) != self.dim for row in part):
                raise ValueError(f"'{part_name}' must be a {self.dim}x{self.dim} array")
        return self

    def to_array(self) -> np.ndarray:
        """Assemble the complex array."""
        return np.array(self.re, dtype=float) + 1j * np.array(self.im, dtype=float)


class VectorRecord(BaseModel):
    """Serialized complex vector."""

    model_config = ConfigDict(extra="forbid")

    dim: int
    re: list[float]
    im: list[float]

    @model_validator(mode="after")
    def check_length(self) -> VectorRecord:
        """Both parts must have length dim."""
        if len(self.re) != self.dim or len(self.im) != self.dim:
            raise ValueError(f"'re' and 'im' must both have length {self.dim}")
        return self

    def to_array(self) -> np.ndarray:
        """Assemble the complex array."""
        return np.array(self.re, dtype=float) + 1j * np.array(self.im, dtype=float)


def matrix_record(entries: np.ndarray) -> MatrixRecord:
    """Wrap a square complex array in a MatrixRecord."""
    a = np.asarray(entries, dtype=complex)
    return MatrixRecord(dim=a.shape[0], re=a.real.tolist(), im=a.imag.tolist())


def vector_record(values: object) -> VectorRecord:
    """Wrap a complex vector in a VectorRecord."""
    v = as_vector(values)
    return VectorRecord(dim=v.size, re=v.real.tolist(), im=v.imag.tolist())


def matrix_to_json(matrix: HermitianMatrix | np.ndarray, indent: int | None = 2) -> str:
    """Serialize a matrix to the JSON schema."""
    entries = matrix.entries if isinstance(matrix, HermitianMatrix) else matrix
    return matrix_record(entries).model_dump_json(indent=indent)


def vector_to_json(values: object, indent: int | None = 2) -> str:
    """Serialize a vector to the JSON schema."""
    return vector_record(values).model_dump_json(indent=indent)


def _load(text: str | Path) -> str:
    if isinstance(text, Path):
        return text.read_text(encoding="utf-8")
    return text


def matrix_from_json(text: str | Path) -> HermitianMatrix:
    """
    Parse a Hermitian matrix from JSON text or a file path.

    Raises:
        ConfigParseError: On malformed JSON or schema violations.
        NotHermitianError: If the decoded matrix is not Hermitian.
    """
    try:
        record = MatrixRecord.model_validate_json(_load(text))
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"]) or None
        raise ConfigParseError(f"Invalid matrix JSON: {first['msg']}", field=field) from e
    return HermitianMatrix(record.to_array())


def vector_from_json(text: str | Path) -> np.ndarray:
    """Parse a complex vector from JSON text or a file path."""
    try:
        record = VectorRecord.model_validate_json(_load(text))
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"]) or None
        raise ConfigParseError(f"Invalid vector JSON: {first['msg']}", field=field) from e
    return record.to_array()
