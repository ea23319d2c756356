"""Custom exceptions for qcaveat."""

from __future__ import annotations


class QcaveatError(Exception):
    """Base exception for qcaveat."""

    pass


class ConfigurationError(QcaveatError):
    """Raised when there's a configuration issue."""

    field: str | None = None


class ConfigParseError(ConfigurationError):
    """Raised when a scenario config file cannot be parsed or validated."""

    def __init__(self, message: str, field: str | None = None) -> None:
        self.field = field
        super().__init__(message)


class UnknownScenarioError(ConfigurationError):
    """Raised when a scenario name is not in the registry."""

    def __init__(self, name: str, known: list[str] | None = None) -> None:
        self.name = name
        self.field = "scenario.name"
        message = f"Unknown scenario: {name!r}"
        if known:
            message += f". Known scenarios: {', '.join(known)}"
        super().__init__(message)


class PreconditionError(QcaveatError, ValueError):
    """Raised when an operation's input violates its precondition."""

    pass


class NotHermitianError(PreconditionError):
    """Raised when a matrix is not Hermitian within tolerance."""

    def __init__(self, deviation: float, tolerance: float) -> None:
        self.deviation = deviation
        self.tolerance = tolerance
        super().__init__(
            f"Matrix is not Hermitian: max |a_ij - conj(a_ji)| = {deviation:.3e} "
            f"exceeds {tolerance:.0e}"
        )


class DimensionMismatchError(PreconditionError):
    """Raised when operand dimensions do not agree."""

    pass


class NonUnitaryError(PreconditionError):
    """Raised when an operator that must be unitary is not."""

    def __init__(self, deviation: float) -> None:
        self.deviation = deviation
        super().__init__(f"Operator is not unitary: ||U^dagger U - I|| = {deviation:.3e}")


class SingularMatrixError(PreconditionError):
    """Raised when a matrix has an eigenvalue below the singular cutoff."""

    pass


class NormalizationError(PreconditionError):
    """Raised when a state vector is zero or not normalized."""

    pass


class PhaseWrapError(PreconditionError):
    """Raised when |lambda * t| >= pi, so phases would wrap around the clock."""

    pass


class TimeScaleError(PreconditionError):
    """Raised when no time scale can be derived (e.g. zero matrix)."""

    pass


class NormTooLargeError(PreconditionError):
    """Raised when data norms are too large for the chosen evolution time."""

    pass


class QubitLimitError(PreconditionError):
    """Raised when a register layout exceeds the simulator's qubit cap."""

    def __init__(self, num_qubits: int, limit: int) -> None:
        self.num_qubits = num_qubits
        self.limit = limit
        super().__init__(f"Layout needs {num_qubits} qubits; simulator cap is {limit}")


class EigenSolverError(QcaveatError):
    """Raised when the Jacobi eigen-solver does not converge."""

    def __init__(self, dim: int, residual: float, sweeps: int) -> None:
        self.dim = dim
        self.residual = residual
        self.sweeps = sweeps
        super().__init__(
            f"Jacobi eigen-solver did not converge for dim={dim} after {sweeps} sweeps "
            f"(off-diagonal residual {residual:.3e})"
        )


class SimulationError(QcaveatError):
    """Raised when a circuit simulation fails."""

    pass


class PostselectionError(SimulationError):
    """Raised when the postselection probability is below the floor."""

    def __init__(self, probability: float, floor: float) -> None:
        self.probability = probability
        self.floor = floor
        super().__init__(
            f"Postselection probability {probability:.3e} is below the floor {floor:.0e}"
        )


class EmptySolutionError(QcaveatError):
    """Raised when every eigencomponent of b is filtered out of the inversion."""

    pass


class AnalysisError(QcaveatError):
    """Raised when an error ledger fails its internal cross-checks."""

    pass


class ReportError(QcaveatError):
    """Raised when there's an issue writing a report."""

    pass


class ZeroSolutionWarning(UserWarning):
    """Emitted when a thresholded inversion keeps no eigencomponent."""

    pass
