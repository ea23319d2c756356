"""Datasets of complex vectors and linear kernels."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from qcaveat.exceptions import ConfigParseError, DimensionMismatchError, PreconditionError
from qcaveat.linalg import HermitianMatrix


class DatasetRecord(BaseModel):
    """JSON form: the matrix schema with one vector per row, plus optional labels."""

    model_config = ConfigDict(extra="forbid")

    dim: int
    re: list[list[float]]
    im: list[list[float]]
    labels: list[float] | None = None

    @model_validator(mode="after")
    def check_shape(self) -> DatasetRecord:
        """Rows must have length dim and re/im must agree."""
        if len(self.re) != len(self.im):
            raise ValueError("'re' and 'im' must have the same number of rows")
        for part in (self.re, self.im):
            if any(len(row) != self.dim for row in part):
                raise ValueError(f"Every row must have length {self.dim}")
        return self


@dataclass(frozen=True, eq=False)
class Dataset:
    """A set of vectors sharing one dimension, with optional real labels."""

    vectors: np.ndarray  # shape (size, dim)
    labels: np.ndarray | None = None

    def __post_init__(self) -> None:
        vectors = np.array(self.vectors, dtype=complex)
        if vectors.ndim == 1:
            vectors = vectors.reshape(1, -1)
        if vectors.ndim != 2 or vectors.shape[0] < 1 or vectors.shape[1] < 1:
            raise DimensionMismatchError(
                f"Dataset needs at least one vector of positive dimension, got {vectors.shape}"
            )
        if not np.all(np.isfinite(vectors)):
            raise PreconditionError("Dataset contains non-finite entries")
        vectors.setflags(write=False)
        object.__setattr__(self, "vectors", vectors)

        if self.labels is not None:
            labels = np.array(self.labels, dtype=float).reshape(-1)
            if labels.size != vectors.shape[0]:
                raise DimensionMismatchError(
                    f"{labels.size} labels for {vectors.shape[0]} vectors"
                )
            labels.setflags(write=False)
            object.__setattr__(self, "labels", labels)

    @property
    def size(self) -> int:
        """Number of vectors M."""
        return int(self.vectors.shape[0])

    @property
    def dim(self) -> int:
        """Vector dimension N."""
        return int(self.vectors.shape[1])

    @property
    def mean(self) -> np.ndarray:
        return self.vectors.mean(axis=0)

    @property
    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.vectors, axis=1)

    def scaled(self, factor: float) -> Dataset:
        return Dataset(self.vectors * factor, self.labels)

    @classmethod
    def from_csv(cls, path: Path, label_column: int | None = None) -> Dataset:
        """
        Load real vectors from CSV, one vector per row.

        Args:
            path: CSV file without a header.
            label_column: Column holding labels, removed from the vectors.
        """
        try:
            data = np.loadtxt(path, delimiter=",", ndmin=2, dtype=float)
        except ValueError as e:
            raise ConfigParseError(f"Cannot parse dataset {path}: {e}") from e
        if label_column is None:
            return cls(data)
        labels = data[:, label_column]
        return cls(np.delete(data, label_column, axis=1), labels)

    @classmethod
    def from_json(cls, source: str | Path) -> Dataset:
        """Load vectors from the JSON schema (text or file path)."""
        text = source.read_text(encoding="utf-8") if isinstance(source, Path) else source
        try:
            record = DatasetRecord.model_validate_json(text)
        except ValidationError as e:
            first = e.errors()[0]
            field = ".".join(str(part) for part in first["loc"]) or None
            raise ConfigParseError(f"Invalid dataset JSON: {first['msg']}", field=field) from e
        vectors = np.array(record.re, dtype=float) + 1j * np.array(record.im, dtype=float)
        return cls(vectors.reshape(len(record.re), record.dim), record.labels)


def gram_matrix(dataset: Dataset) -> HermitianMatrix:
    """Linear kernel K_ij = <x_i|x_j>."""
    x = dataset.vectors
    return HermitianMatrix(x.conj() @ x.T)
