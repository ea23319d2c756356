"""Shared test fixtures for qcaveat."""

from __future__ import annotations

from collections.abc import Generator

import numpy as np
import pytest

from qcaveat.config import get_settings
from qcaveat.linalg import HermitianMatrix, eig_hermitian, hermitian_with_spectrum
from qcaveat.utils.rng import make_rng


@pytest.fixture(autouse=True)
def clear_settings_cache(monkeypatch: pytest.MonkeyPatch) -> Generator[None, None, None]:
    """Isolate tests from QCAVEAT_* variables and cached settings."""
    monkeypatch.delenv("QCAVEAT_THREADS", raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator."""
    return make_rng(1234)


@pytest.fixture
def pauli_x() -> HermitianMatrix:
    """The Pauli X matrix, eigenvalues +1 and -1."""
    return HermitianMatrix(np.array([[0, 1], [1, 0]], dtype=complex))


@pytest.fixture
def diagonal_matrix() -> HermitianMatrix:
    """diag(2, 1, 0.5, 0.25)."""
    return HermitianMatrix.diagonal([2.0, 1.0, 0.5, 0.25])


@pytest.fixture
def dense_matrix(rng: np.random.Generator) -> HermitianMatrix:
    """Dense complex 4x4 matrix with spectrum (1, 0.5, -0.5, 0.25)."""
    return hermitian_with_spectrum([1.0, 0.5, -0.5, 0.25], rng)


@pytest.fixture
def on_grid_matrix(rng: np.random.Generator) -> HermitianMatrix:
    """
    Dense 4x4 matrix whose spectrum sits on the k=3 clock grid for t = pi/2.

    Grid spacing is 2*pi/(t*N) = 0.5, so eigenvalues are multiples of 0.5
    with |lambda| t < pi.
    """
    return hermitian_with_spectrum([1.5, 1.0, 0.5, -0.5], rng)


@pytest.fixture
def on_grid_decomposition(on_grid_matrix: HermitianMatrix):
    """Eigendecomposition of on_grid_matrix."""
    return eig_hermitian(on_grid_matrix)
