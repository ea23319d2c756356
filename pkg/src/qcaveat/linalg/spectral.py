"""Spectral bounds, conditioning and the classical inversion oracle."""

from __future__ import annotations

import warnings

import numpy as np

from qcaveat.config.defaults import SINGULAR_CUTOFF
from qcaveat.exceptions import (
    DimensionMismatchError,
    NormalizationError,
    PreconditionError,
    SingularMatrixError,
    ZeroSolutionWarning,
)
from qcaveat.linalg.jacobi import eig_hermitian
from qcaveat.linalg.matrices import (
    HermitianMatrix,
    SpectralBounds,
    SpectralDecomposition,
    as_vector,
)
from qcaveat.utils.logging import get_logger

logger = get_logger(__name__)


def spectral_bounds(matrix: HermitianMatrix) -> SpectralBounds:
    """
    Compute four classical upper bounds on |lambda_max|.

    Args:
        matrix: Hermitian matrix A.

    Returns:
        SpectralBounds with sqrt(Tr(A A^dagger)), the max column sum,
        the Frobenius norm and M * max |a_ij|.
    """
    a = matrix.entries
    magnitudes = np.abs(a)
    trace = float(np.real(np.trace(a @ a.conj().T)))
    return SpectralBounds(
        trace_bound=float(np.sqrt(max(trace, 0.0))),
        one_norm=float(np.max(np.sum(magnitudes, axis=0))),
        frobenius=float(np.sqrt(np.sum(magnitudes**2))),
        max_entry_bound=float(matrix.dim * np.max(magnitudes)),
    )


def condition_number(decomposition: SpectralDecomposition) -> float:
    """
    Ratio of largest to smallest eigenvalue magnitude.

    Raises:
        SingularMatrixError: If min |lambda| is below the singular cutoff
            relative to |lambda_max|.
    """
    lam_max = decomposition.lambda_max
    lam_min = decomposition.lambda_min
    if lam_max == 0.0 or lam_min < SINGULAR_CUTOFF * lam_max:
        raise SingularMatrixError(
            f"Matrix is singular: min |lambda| = {lam_min:.3e}, max |lambda| = {lam_max:.3e}"
        )
    return lam_max / lam_min


def thresholded_solve(
    matrix: HermitianMatrix,
    b: object,
    mu: float,
    decomposition: SpectralDecomposition | None = None,
) -> np.ndarray:
    """
    Invert A on the eigencomponents with |lambda_j| >= mu.

    Returns sum over kept j of beta_j / lambda_j |u_j>, with beta_j = <u_j|b>.
    Components below the threshold contribute zero.

    Args:
        matrix: Hermitian matrix A.
        b: Right-hand side, nonzero.
        mu: Eigenvalue threshold, >= 0.
        decomposition: Precomputed eigendecomposition of A.

    Returns:
        Complex solution vector. The zero vector, with a ZeroSolutionWarning,
        when no eigenvalue reaches mu.

    Raises:
        SingularMatrixError: If a kept eigenvalue is numerically zero.
    """
    vector = as_vector(b, "b")
    if vector.size != matrix.dim:
        raise DimensionMismatchError(
            f"b has length {vector.size}, matrix dimension is {matrix.dim}"
        )
    if np.linalg.norm(vector) == 0.0:
        raise NormalizationError("b must be nonzero")
    if not np.isfinite(mu) or mu < 0.0:
        raise PreconditionError(f"mu must be a finite nonnegative number, got {mu}")

    d = decomposition if decomposition is not None else eig_hermitian(matrix)
    magnitudes = np.abs(d.eigenvalues)
    keep = magnitudes >= mu

    if not np.any(keep):
        message = f"All {d.dim} eigenvalues fall below mu={mu}; returning the zero vector"
        logger.warning(message)
        warnings.warn(message, ZeroSolutionWarning, stacklevel=2)
        return np.zeros(d.dim, dtype=complex)

    if np.any(magnitudes[keep] < SINGULAR_CUTOFF * d.lambda_max) or d.lambda_max == 0.0:
        raise SingularMatrixError(
            f"Kept eigenvalue below singular cutoff (mu={mu}); raise mu to filter it"
        )

    beta = d.coefficients(vector)
    inverse = np.zeros(d.dim, dtype=float)
    inverse[keep] = 1.0 / d.eigenvalues[keep]
    logger.debug(f"thresholded_solve: kept {int(keep.sum())}/{d.dim} modes at mu={mu}")
    return d.eigenvectors @ (beta * inverse)


def matrix_exponential_unitary(decomposition: SpectralDecomposition, t: float) -> np.ndarray:
    """Return U diag(exp(i lambda_j t)) U^dagger."""
    if not np.isfinite(t):
        raise PreconditionError(f"t must be finite, got {t}")
    phases = np.exp(1j * decomposition.eigenvalues * float(t))
    v = decomposition.eigenvectors
    return (v * phases) @ v.conj().T
