"""Cyclic Jacobi eigen-solver for dense Hermitian matrices.

Each rotation first removes the phase of the pivot a_pq, then applies the
classical real Jacobi rotation (Golub & Van Loan, sym.schur2) to zero it.
A sweep visits every pair (p, q), p < q, in row order. The solver stops
after the first sweep that performs no rotation.
"""

from __future__ import annotations

import numpy as np

from qcaveat.config.defaults import (
    EIGENVALUE_TIE_TOLERANCE,
    JACOBI_ABSOLUTE_FLOOR,
    JACOBI_MAX_SWEEPS,
    JACOBI_RELATIVE_TOLERANCE,
)
from qcaveat.exceptions import EigenSolverError
from qcaveat.linalg.matrices import HermitianMatrix, SpectralDecomposition
from qcaveat.utils.logging import get_logger

logger = get_logger(__name__)


def _off_diagonal_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """Zero a[p, q] in place with a unitary similarity; accumulate into v."""
    apq = a[p, q]
    r = abs(apq)
    phase = apq / r
    app = a[p, p].real
    aqq = a[q, q].real

    tau = (aqq - app) / (2.0 * r)
    t = (1.0 if tau >= 0.0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c

    # G = diag(1, conj(phase)) @ [[c, s], [-s, c]] on the (p, q) plane
    g00, g01 = c, s
    g10, g11 = -s * np.conj(phase), c * np.conj(phase)

    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = col_p * g00 + col_q * g10
    a[:, q] = col_p * g01 + col_q * g11

    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = np.conj(g00) * row_p + np.conj(g10) * row_q
    a[q, :] = np.conj(g01) * row_p + np.conj(g11) * row_q

    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real

    vp = v[:, p].copy()
    vq = v[:, q].copy()
    v[:, p] = vp * g00 + vq * g10
    v[:, q] = vp * g01 + vq * g11


def _sweep(a: np.ndarray, v: np.ndarray, floor: float) -> int:
    n = a.shape[0]
    rotations = 0
    for p in range(n - 1):
        for q in range(p + 1, n):
            magnitude = abs(a[p, q])
            if magnitude <= floor:
                continue
            if magnitude <= JACOBI_RELATIVE_TOLERANCE * np.sqrt(abs(a[p, p].real * a[q, q].real)):
                continue
            _rotate(a, v, p, q)
            rotations += 1
    return rotations


def _sort_order(values: np.ndarray) -> np.ndarray:
    """Descending |lambda|, then signed value descending, then original index."""
    scale = max(float(np.max(np.abs(values))), np.finfo(float).tiny)
    tol = EIGENVALUE_TIE_TOLERANCE * scale
    magnitude_key = np.round(np.abs(values) / tol)
    signed_key = np.round(values / tol)
    return np.lexsort((np.arange(values.size), -signed_key, -magnitude_key))


def _fix_phase(column: np.ndarray) -> np.ndarray:
    """Make the largest-magnitude component real and positive."""
    pivot = int(np.argmax(np.abs(column)))
    value = column[pivot]
    if value == 0:
        return column
    return column * (np.conj(value) / abs(value))


def _orthonormalize_blocks(values: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """Gram-Schmidt (QR in column order) inside each degenerate block."""
    scale = max(float(np.max(np.abs(values))), np.finfo(float).tiny)
    tol = EIGENVALUE_TIE_TOLERANCE * scale
    result = vectors.copy()
    start = 0
    n = values.size
    while start < n:
        stop = start + 1
        while stop < n and abs(values[stop] - values[start]) <= tol:
            stop += 1
        if stop - start > 1:
            q, _ = np.linalg.qr(result[:, start:stop])
            result[:, start:stop] = q
        start = stop

    for j in range(n):
        result[:, j] = _fix_phase(result[:, j])
    return result


def eig_hermitian(
    matrix: HermitianMatrix,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> SpectralDecomposition:
    """
    Diagonalize a Hermitian matrix with cyclic Jacobi rotations.

    Args:
        matrix: The Hermitian matrix A.
        max_sweeps: Iteration cap on full sweeps.

    Returns:
        Spectral decomposition with eigenvalues sorted by descending magnitude
        (ties: signed value descending, then original index) and eigenvectors
        with a deterministic phase.

    Raises:
        EigenSolverError: If a sweep still rotates after max_sweeps sweeps.
    """
    a = np.array(matrix.entries, dtype=complex)
    n = matrix.dim
    v = np.eye(n, dtype=complex)
    frobenius = float(np.linalg.norm(a))
    floor = max(JACOBI_ABSOLUTE_FLOOR * frobenius, np.finfo(float).tiny)

    sweeps = 0
    while True:
        if sweeps >= max_sweeps:
            raise EigenSolverError(n, _off_diagonal_norm(a), sweeps)
        rotations = _sweep(a, v, floor)
        sweeps += 1
        if rotations == 0:
            break

    logger.debug(f"Jacobi converged: dim={n}, sweeps={sweeps}")

    # Rayleigh quotients against the original matrix sharpen the diagonal
    values = np.real(np.einsum("ij,ik,kj->j", v.conj(), matrix.entries, v))
    order = _sort_order(values)
    values = values[order]
    vectors = _orthonormalize_blocks(values, v[:, order])

    return SpectralDecomposition(eigenvalues=values, eigenvectors=vectors)
