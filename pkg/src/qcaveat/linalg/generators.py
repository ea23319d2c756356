"""Random test-instance generators for Hermitian matrices and unitaries."""

from __future__ import annotations

import numpy as np

from qcaveat.exceptions import PreconditionError
from qcaveat.linalg.matrices import HermitianMatrix


def _check_dim(dim: int) -> None:
    if dim < 1:
        raise PreconditionError(f"Dimension must be at least 1, got {dim}")


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary from the QR decomposition of a complex Gaussian matrix."""
    _check_dim(dim)
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    return q * (diag / np.abs(diag))


def random_hermitian(dim: int, rng: np.random.Generator, scale: float = 1.0) -> HermitianMatrix:
    """Random dense Hermitian matrix (GUE-like) with entries of order scale."""
    _check_dim(dim)
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return HermitianMatrix(scale * 0.5 * (z + z.conj().T))


def hermitian_with_spectrum(
    eigenvalues: object,
    rng: np.random.Generator | None = None,
) -> HermitianMatrix:
    """
    Build a Hermitian matrix with a prescribed spectrum.

    Args:
        eigenvalues: Real eigenvalues.
        rng: Generator for a random eigenbasis. None gives the diagonal matrix.

    Returns:
        V diag(eigenvalues) V^dagger.
    """
    values = np.asarray(eigenvalues, dtype=float).reshape(-1)
    _check_dim(values.size)
    if rng is None:
        return HermitianMatrix.diagonal(values)
    v = random_unitary(values.size, rng)
    return HermitianMatrix((v * values) @ v.conj().T)


def random_unit_vector(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Uniformly random complex unit vector."""
    _check_dim(dim)
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return z / np.linalg.norm(z)
