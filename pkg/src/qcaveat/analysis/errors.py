"""Error ledgers for HHL solutions and the accuracy budget."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from qcaveat.config.defaults import SINGULAR_CUTOFF
from qcaveat.exceptions import (
    AnalysisError,
    DimensionMismatchError,
    NormalizationError,
    PreconditionError,
    SingularMatrixError,
)
from qcaveat.hhl import HhlResult
from qcaveat.linalg import HermitianMatrix, SpectralDecomposition, as_vector, eig_hermitian
from qcaveat.utils.logging import get_logger

logger = get_logger(__name__)

RESIDUAL_IDENTITY_TOLERANCE = 1e-10


@dataclass(frozen=True)
class ModeError:
    """One eigencomponent: coefficient, exact and decoded eigenvalue."""

    beta: complex
    eigenvalue: float
    estimate: float
    kept: bool

    @property
    def inverse_estimate(self) -> float:
        """lambda~^-1, zero for filtered modes."""
        return 1.0 / self.estimate if self.kept else 0.0


@dataclass(frozen=True, eq=False)
class ErrorReport:
    """Norms and errors of an HHL solution against the exact solution."""

    Z: float  # |x|^2
    Z_tilde: float  # sum |beta_j / lambda~_j|^2
    state_error: float  # || |x> - |x~> ||
    classical_error: float  # |x - x~|
    residual: float  # |A x~ - b|
    residual_identity: float  # sqrt(sum |beta_j (lambda_j / lambda~_j - 1)|^2)
    z_gap_bound: float  # eps (2 max|lambda^-1| + eps) |b|^2
    decoded_error: float  # |x - decoded_solution| for the result's own vector
    per_mode: tuple[ModeError, ...]
    uses_filtered_convention: bool  # filtered modes enter with lambda~^-1 = 0

    @property
    def x_norm(self) -> float:
        return math.sqrt(self.Z)

    @property
    def z_gap(self) -> float:
        return abs(self.Z - self.Z_tilde)

    def as_row(self) -> dict[str, float | bool]:
        return {
            "Z_hhl": self.Z,
            "Z_tilde": self.Z_tilde,
            "state_error": self.state_error,
            "classical_error": self.classical_error,
            "residual": self.residual,
            "residual_identity": self.residual_identity,
            "z_gap_bound": self.z_gap_bound,
            "filtered_convention": self.uses_filtered_convention,
        }


def error_report(
    matrix: HermitianMatrix,
    b: object,
    result: HhlResult,
    decomposition: SpectralDecomposition | None = None,
) -> ErrorReport:
    """
    Build the error ledger of an HHL result.

    Every quantity is computed from the eigendecomposition of A. The residual
    is computed directly as |A x~ - b| and cross-checked against the per-mode
    identity sum |beta_j (lambda_j / lambda~_j - 1)|^2.

    Args:
        matrix: Hermitian matrix A (invertible).
        b: Right-hand side used for the result.
        result: HHL result for (A, b).
        decomposition: Precomputed eigendecomposition of A.

    Raises:
        DimensionMismatchError: If b or the result do not match A.
        AnalysisError: If the residual identity fails.
    """
    vector = as_vector(b, "b")
    if vector.size != matrix.dim or result.dim != matrix.dim:
        raise DimensionMismatchError(
            f"Matrix dimension {matrix.dim}, b length {vector.size}, result length {result.dim}"
        )
    b_norm_sq = float(np.vdot(vector, vector).real)
    if b_norm_sq == 0.0:
        raise NormalizationError("b must be nonzero")

    d = decomposition if decomposition is not None else eig_hermitian(matrix)
    eigenvalues = np.array(d.eigenvalues)
    if np.min(np.abs(eigenvalues)) < SINGULAR_CUTOFF * d.lambda_max or d.lambda_max == 0.0:
        raise SingularMatrixError("Error ledger needs an invertible matrix")
    if not np.allclose(eigenvalues, result.eigenvalues, rtol=1e-9, atol=1e-12):
        raise PreconditionError("Result was not produced from this matrix")

    beta = d.coefficients(vector)
    inverse = 1.0 / eigenvalues
    inverse_tilde = result.inverse_estimates

    x = d.eigenvectors @ (beta * inverse)
    x_tilde = d.eigenvectors @ (beta * inverse_tilde)
    z = float(np.sum(np.abs(beta * inverse) ** 2))
    z_tilde = float(np.sum(np.abs(beta * inverse_tilde) ** 2))

    state_error = float(np.linalg.norm(x / math.sqrt(z) - x_tilde / math.sqrt(z_tilde)))
    classical_error = float(np.linalg.norm(x - x_tilde))
    residual = float(np.linalg.norm(matrix.entries @ x_tilde - vector))
    identity_sq = float(np.sum(np.abs(beta * (eigenvalues * inverse_tilde - 1.0)) ** 2))

    if abs(residual**2 - identity_sq) > RESIDUAL_IDENTITY_TOLERANCE * max(1.0, b_norm_sq):
        raise AnalysisError(
            f"Residual identity failed: |A x~ - b|^2 = {residual**2:.12e}, "
            f"per-mode sum = {identity_sq:.12e}"
        )

    eps = float(np.max(np.abs(inverse - inverse_tilde)))
    z_gap_bound = eps * (2.0 * float(np.max(np.abs(inverse))) + eps) * b_norm_sq

    per_mode = tuple(
        ModeError(
            beta=complex(beta_j),
            eigenvalue=float(lam),
            estimate=float(est),
            kept=bool(keep),
        )
        for beta_j, lam, est, keep in zip(
            beta, eigenvalues, result.estimates, result.kept, strict=True
        )
    )
    filtered = not bool(np.all(result.kept))
    logger.debug(
        f"error_report: Z={z:.6g}, Z~={z_tilde:.6g}, state_error={state_error:.3e}, "
        f"residual={residual:.3e}, filtered={filtered}"
    )
    return ErrorReport(
        Z=z,
        Z_tilde=z_tilde,
        state_error=state_error,
        classical_error=classical_error,
        residual=residual,
        residual_identity=math.sqrt(identity_sq),
        z_gap_bound=z_gap_bound,
        decoded_error=float(np.linalg.norm(x - result.decoded_solution)),
        per_mode=per_mode,
        uses_filtered_convention=filtered,
    )


def accuracy_budget(kappa: float, b_norm: float, x_norm: float, target: float) -> float:
    """
    Simulation accuracy needed for a target error on the classical solution.

    Returns target / max{kappa * b_norm^2, x_norm}.
    """
    checks = {"kappa": kappa, "b_norm": b_norm, "x_norm": x_norm, "target": target}
    for name, value in checks.items():
        if not (math.isfinite(value) and value > 0.0):
            raise PreconditionError(f"{name} must be positive and finite, got {value}")
    return target / max(kappa * b_norm**2, x_norm)
