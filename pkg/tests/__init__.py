"""
PyIDCap Test Suite

Test Modules:
    - test_pauli_bloch.py: states, Pauli strings and Bloch vectors
    - test_channels.py: depolarizing channel, BSC and the product-measurement reduction
    - test_info_measures.py: entropies, Renyi divergences and Sibson information
    - test_soft_covering.py: codebooks, covering bounds and Monte Carlo checks
    - test_covering_geometry.py: ellipsoid covering and the unrestricted bound
    - test_bounds_api.py: identification codes and the bound catalogue
    - test_config.py, test_experiments.py, test_cli.py: the command-line layer
    - test_mapping.py, test_utils.py: error mapping and helpers

Running Tests:
    pytest
    pytest -m "not slow"
    pytest --cov=pyidcap --cov-report=html

License: MIT
"""

import sys
from pathlib import Path

import numpy as np

# Add parent directory to path for imports
TEST_DIR = Path(__file__).parent
PROJECT_ROOT = TEST_DIR.parent
sys.path.insert(0, str(PROJECT_ROOT))

from pyidcap.pauli_bloch import DensityMatrix, random_state  # noqa: E402
from pyidcap.utils import make_rng  # noqa: E402

# Tolerances used across the suite
ATOL = 1e-10
LOOSE_ATOL = 1e-6

KET_0 = np.array([1.0, 0.0], dtype=complex)
KET_1 = np.array([0.0, 1.0], dtype=complex)
KET_PLUS = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0)
KET_PLUS_I = np.array([1.0, 1.0j], dtype=complex) / np.sqrt(2.0)


def ket(*qubits: np.ndarray) -> np.ndarray:
    """Tensor product of single-qubit kets, first qubit most significant."""
    out = np.array([1.0], dtype=complex)
    for q in qubits:
        out = np.kron(out, q)
    return out


def pure(*qubits: np.ndarray) -> DensityMatrix:
    return DensityMatrix.from_pure(ket(*qubits))


def seeded_rng(seed: int = 1234) -> np.random.Generator:
    return make_rng(seed)


def random_decoder(dim: int, rng: np.random.Generator) -> np.ndarray:
    """U diag(u) U^dagger with eigenvalues u uniform in [0, 1]."""
    _, vecs = np.linalg.eigh(random_state(dim.bit_length() - 1, rng).data)
    return vecs @ np.diag(rng.uniform(size=dim)) @ vecs.conj().T


class TestHelper:
    """Helper class with assertion utilities for tests."""

    @staticmethod
    def assert_valid_state(rho: DensityMatrix, atol: float = ATOL):
        """Hermitian, unit trace and positive semidefinite."""
        data = rho.data
        assert np.allclose(data, data.conj().T, atol=atol)
        assert abs(np.trace(data).real - 1.0) < atol
        assert np.linalg.eigvalsh(data)[0] > -atol

    @staticmethod
    def assert_distribution(probs, atol: float = ATOL):
        probs = np.asarray(probs, dtype=float)
        assert np.all(probs >= -atol)
        assert abs(probs.sum() - 1.0) < atol


__all__ = [
    'TEST_DIR',
    'PROJECT_ROOT',
    'ATOL',
    'LOOSE_ATOL',
    'KET_0',
    'KET_1',
    'KET_PLUS',
    'KET_PLUS_I',
    'ket',
    'pure',
    'seeded_rng',
    'random_decoder',
    'TestHelper',
]
