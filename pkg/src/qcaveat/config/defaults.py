"""Default configuration values for qcaveat."""

from pathlib import Path

# Base paths
BASE_DIR = Path.cwd()
REPORTS_DIR = BASE_DIR / "reports"

# =============================================================================
# Numerical tolerances
# =============================================================================

HERMITIAN_TOLERANCE = 1e-12
UNITARY_TOLERANCE = 1e-10
STATE_NORM_TOLERANCE = 1e-10
PREPARE_NORM_TOLERANCE = 1e-8  # Inputs within this of unit norm are renormalized
SINGULAR_CUTOFF = 1e-14  # Relative to |lambda_max|
PHASE_SINGULARITY_TOLERANCE = 1e-12
POSTSELECTION_FLOOR = 1e-12

# Jacobi eigen-solver
JACOBI_MAX_SWEEPS = 100
JACOBI_RELATIVE_TOLERANCE = 2.220446049250313e-16  # Machine epsilon, relative to sqrt(|a_pp a_qq|)
JACOBI_ABSOLUTE_FLOOR = 1e-18  # Relative to the Frobenius norm
EIGENVALUE_TIE_TOLERANCE = 1e-12  # Relative to |lambda_max|

# =============================================================================
# Simulation defaults
# =============================================================================

MAX_QUBITS = 22
DEFAULT_SAFETY_FACTOR = 0.99
DEFAULT_CLOCK_QUBITS = 6

# Register names used by the QPE and HHL circuits
CLOCK_REGISTER = "clock"
SYSTEM_REGISTER = "system"
ANCILLA_REGISTER = "ancilla"

# Rotation constant is pulled just inside the smallest kept |lambda|
ROTATION_SHRINK = 1e-9

# =============================================================================
# Estimators
# =============================================================================

HOEFFDING_CONFIDENCE = 0.95
CLASSIFICATION_MAX_ANGLE = 0.1  # t * max norm must stay below this

# =============================================================================
# Experiments and reports
# =============================================================================

DEFAULT_SEED = 0
DEFAULT_THREADS = 1
DEFAULT_OUTPUT_FORMAT = "csv"
OUTPUT_FORMATS = ("csv", "json", "markdown")

# Logging defaults
DEFAULT_LOG_LEVEL = "INFO"
DEFAULT_LOG_MAX_SIZE_MB = 10
DEFAULT_LOG_BACKUP_COUNT = 3
