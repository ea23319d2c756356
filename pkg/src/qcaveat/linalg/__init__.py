"""Exact classical linear algebra: the oracle for every quantum pipeline."""

from qcaveat.linalg.generators import (
    hermitian_with_spectrum,
    random_hermitian,
    random_unit_vector,
    random_unitary,
)
from qcaveat.linalg.jacobi import eig_hermitian
from qcaveat.linalg.matrices import (
    BoundChoice,
    HermitianMatrix,
    SpectralBounds,
    SpectralDecomposition,
    as_vector,
)
from qcaveat.linalg.serialization import (
    matrix_from_json,
    matrix_to_json,
    vector_from_json,
    vector_to_json,
)
from qcaveat.linalg.spectral import (
    condition_number,
    matrix_exponential_unitary,
    spectral_bounds,
    thresholded_solve,
)

__all__ = [
    "BoundChoice",
    "HermitianMatrix",
    "SpectralBounds",
    "SpectralDecomposition",
    "as_vector",
    "condition_number",
    "eig_hermitian",
    "hermitian_with_spectrum",
    "matrix_exponential_unitary",
    "matrix_from_json",
    "matrix_to_json",
    "random_hermitian",
    "random_unit_vector",
    "random_unitary",
    "spectral_bounds",
    "thresholded_solve",
    "vector_from_json",
    "vector_to_json",
]
