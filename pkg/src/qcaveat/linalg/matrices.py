"""Core matrix types: Hermitian matrices and their spectral data."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from qcaveat.config.defaults import HERMITIAN_TOLERANCE, UNITARY_TOLERANCE
from qcaveat.exceptions import (
    DimensionMismatchError,
    NonUnitaryError,
    NotHermitianError,
    PreconditionError,
)


def as_vector(values: object, name: str = "vector") -> np.ndarray:
    """
    Convert input to a finite 1-D complex array.

    Args:
        values: Array-like input.
        name: Name used in error messages.

    Returns:
        A fresh complex128 array.
    """
    vector = np.atleast_1d(np.array(values, dtype=complex))
    if vector.ndim != 1:
        raise DimensionMismatchError(f"{name} must be one-dimensional, got shape {vector.shape}")
    if vector.size == 0:
        raise DimensionMismatchError(f"{name} must not be empty")
    if not np.all(np.isfinite(vector)):
        raise PreconditionError(f"{name} contains non-finite entries")
    return vector


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """
    Dense complex square matrix with enforced Hermitian symmetry.

    The stored entries are exactly Hermitian: inputs within tolerance are
    symmetrized on construction, and the array is read-only.
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        a = np.array(self.entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionMismatchError(f"Matrix must be square, got shape {a.shape}")
        if a.shape[0] < 1:
            raise DimensionMismatchError("Matrix dimension must be at least 1")
        if not np.all(np.isfinite(a)):
            raise PreconditionError("Matrix contains non-finite entries")

        scale = max(1.0, float(np.max(np.abs(a))))
        deviation = float(np.max(np.abs(a - a.conj().T)))
        if deviation > HERMITIAN_TOLERANCE * scale:
            raise NotHermitianError(deviation, HERMITIAN_TOLERANCE * scale)

        a = 0.5 * (a + a.conj().T)
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def dim(self) -> int:
        """Matrix dimension M."""
        return int(self.entries.shape[0])

    @classmethod
    def identity(cls, dim: int) -> HermitianMatrix:
        """The M x M identity."""
        return cls(np.eye(dim, dtype=complex))

    @classmethod
    def diagonal(cls, values: object) -> HermitianMatrix:
        """Diagonal matrix with real diagonal values."""
        diag = np.asarray(values, dtype=float).reshape(-1)
        return cls(np.diag(diag).astype(complex))

    def scaled(self, factor: float) -> HermitianMatrix:
        """Return factor * A."""
        return HermitianMatrix(float(factor) * self.entries)

    def apply(self, vector: object) -> np.ndarray:
        """Return A @ vector."""
        v = as_vector(vector)
        if v.size != self.dim:
            raise DimensionMismatchError(
                f"Vector of length {v.size} does not match matrix dimension {self.dim}"
            )
        return self.entries @ v

    def __repr__(self) -> str:
        return f"HermitianMatrix(dim={self.dim})"


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Real eigenvalues with a unitary eigenvector matrix (columns are |u_j>)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self) -> None:
        values = np.array(self.eigenvalues, dtype=float).reshape(-1)
        vectors = np.array(self.eigenvectors, dtype=complex)
        if vectors.shape != (values.size, values.size):
            raise DimensionMismatchError(
                f"Eigenvector matrix shape {vectors.shape} does not match "
                f"{values.size} eigenvalues"
            )
        if not np.all(np.isfinite(values)):
            raise PreconditionError("Eigenvalues must be finite")
        deviation = float(np.linalg.norm(vectors.conj().T @ vectors - np.eye(values.size), 2))
        if deviation > UNITARY_TOLERANCE:
            raise NonUnitaryError(deviation)
        values.setflags(write=False)
        vectors.setflags(write=False)
        object.__setattr__(self, "eigenvalues", values)
        object.__setattr__(self, "eigenvectors", vectors)

    @property
    def dim(self) -> int:
        """Matrix dimension M."""
        return int(self.eigenvalues.size)

    @property
    def lambda_max(self) -> float:
        """Largest eigenvalue magnitude."""
        return float(np.max(np.abs(self.eigenvalues)))

    @property
    def lambda_min(self) -> float:
        """Smallest eigenvalue magnitude."""
        return float(np.min(np.abs(self.eigenvalues)))

    def coefficients(self, vector: object) -> np.ndarray:
        """Expansion coefficients beta_j = <u_j|vector>."""
        v = as_vector(vector)
        if v.size != self.dim:
            raise DimensionMismatchError(
                f"Vector of length {v.size} does not match decomposition dimension {self.dim}"
            )
        return self.eigenvectors.conj().T @ v

    def reconstruct(self) -> np.ndarray:
        """U diag(lambda) U^dagger."""
        return (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.conj().T

    def reconstruction_error(self, matrix: HermitianMatrix) -> float:
        """Largest entry of |U diag(lambda) U^dagger - A|."""
        if matrix.dim != self.dim:
            raise DimensionMismatchError(
                f"Matrix dimension {matrix.dim} does not match decomposition dimension {self.dim}"
            )
        return float(np.max(np.abs(self.reconstruct() - matrix.entries)))


class BoundChoice(str, Enum):
    """Upper bounds on |lambda_max| available for time-scale selection."""

    TRACE_BOUND = "trace_bound"
    ONE_NORM = "one_norm"
    FROBENIUS = "frobenius"
    MAX_ENTRY_BOUND = "max_entry_bound"
    EXACT_LAMBDA_MAX = "exact_lambda_max"


@dataclass(frozen=True)
class SpectralBounds:
    """Classical upper bounds on the largest eigenvalue magnitude."""

    trace_bound: float  # sqrt(Tr(A A^dagger))
    one_norm: float  # max column absolute sum
    frobenius: float  # sqrt(sum |a_ij|^2)
    max_entry_bound: float  # M * max |a_ij|

    def get(self, choice: BoundChoice) -> float:
        """Look up a bound by name."""
        if choice is BoundChoice.EXACT_LAMBDA_MAX:
            raise PreconditionError("exact_lambda_max is not a classical bound; use eig_hermitian")
        return float(getattr(self, choice.value))

    def as_dict(self) -> dict[str, float]:
        """All bounds keyed by name."""
        return {
            "trace_bound": self.trace_bound,
            "one_norm": self.one_norm,
            "frobenius": self.frobenius,
            "max_entry_bound": self.max_entry_bound,
        }
