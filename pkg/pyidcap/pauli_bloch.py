"""
PyIDCap Pauli/Bloch Module

n-qubit density matrices, the normalized Pauli basis sigma_alpha / sqrt(d),
the Bloch embedding of states into R^(4^n - 1) and the distances that
relate operators to their Bloch vectors.

Pauli strings are ordered lexicographically over {0,1,2,3}^n (I, X, Y, Z),
first qubit most significant. The identity string has index 0 and is never
stored in a BlochVector, so Bloch coordinate j belongs to string index j + 1.

License: MIT
"""

import logging
from dataclasses import InitVar, dataclass, field
from functools import lru_cache, reduce
from typing import Optional, Sequence, Tuple

import numpy as np

from pyidcap.errors import DimensionError, ParameterError, ValidationError
from pyidcap.utils import (
    HERMITIAN_TOL,
    MAX_MATRIX_QUBITS,
    PSD_TOL,
    TRACE_TOL,
    is_power_of_two,
    num_qubits,
)

logger = logging.getLogger(__name__)

PAULIS = np.array([
    [[1, 0], [0, 1]],
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=complex)
PAULIS.setflags(write=False)

PAULI_LETTERS = 'IXYZ'


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """
    A d x d density operator on n = log2(d) qubits.

    The data is copied into a read-only complex array. With ``check=True``
    (the default) construction enforces Hermiticity, unit trace and
    positivity; ``check=False`` only enforces shape, which is what
    bloch_to_state needs for vectors outside the Bloch body.
    """

    data: np.ndarray
    check: InitVar[bool] = True

    def __post_init__(self, check: bool) -> None:
        arr = np.array(self.data, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise DimensionError(f"density matrix must be square, got shape {arr.shape}")
        if not is_power_of_two(arr.shape[0]) or arr.shape[0] < 2:
            raise DimensionError(f"dimension {arr.shape[0]} is not a power of two >= 2")
        if num_qubits(arr.shape[0]) > MAX_MATRIX_QUBITS:
            raise DimensionError(
                f"{num_qubits(arr.shape[0])} qubits exceed dense limit of {MAX_MATRIX_QUBITS}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, 'data', arr)
        if check:
            self.validate()

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @property
    def n_qubits(self) -> int:
        return num_qubits(self.dim)

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.data - self.data.conj().T)))

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues of the Hermitian part, ascending."""
        return np.linalg.eigvalsh(0.5 * (self.data + self.data.conj().T))

    def validate(self) -> 'DensityMatrix':
        """Raise ValidationError unless Hermitian, unit-trace and PSD within tolerance."""
        herm = self.hermiticity_error()
        if herm > HERMITIAN_TOL:
            raise ValidationError(f"matrix is not Hermitian (deviation {herm:.3g})")
        trace = complex(np.trace(self.data))
        if abs(trace - 1.0) > TRACE_TOL:
            raise ValidationError(f"trace is {trace.real:.15g}, expected 1")
        smallest = float(self.eigenvalues()[0])
        if smallest < -PSD_TOL:
            raise ValidationError(f"matrix has negative eigenvalue {smallest:.3g}")
        return self

    @property
    def is_valid(self) -> bool:
        try:
            self.validate()
        except ValidationError:
            return False
        return True

    @property
    def purity(self) -> float:
        """Tr(rho^2)."""
        return float(np.real(np.vdot(self.data.conj().T, self.data)))

    @property
    def rank(self) -> int:
        return int(np.sum(self.eigenvalues() > 1e-10))

    @classmethod
    def maximally_mixed(cls, n: int) -> 'DensityMatrix':
        d = 2 ** n
        return cls(np.eye(d) / d)

    @classmethod
    def from_pure(cls, vector: Sequence[complex]) -> 'DensityMatrix':
        """|psi><psi| for a (not necessarily normalized) nonzero vector."""
        psi = np.asarray(vector, dtype=complex).ravel()
        norm = np.linalg.norm(psi)
        if norm == 0:
            raise ValidationError("zero vector has no pure state")
        psi = psi / norm
        return cls(np.outer(psi, psi.conj()))

    @classmethod
    def from_diagonal(cls, probs: Sequence[float]) -> 'DensityMatrix':
        return cls(np.diag(np.asarray(probs, dtype=float)))

    def __repr__(self) -> str:
        return f"DensityMatrix(n_qubits={self.n_qubits})"


@dataclass(frozen=True)
class PauliString:
    """A tensor product of single-qubit Paulis, letters over {0,1,2,3}."""

    letters: Tuple[int, ...]

    def __post_init__(self) -> None:
        letters = tuple(int(x) for x in self.letters)
        if len(letters) < 1:
            raise ParameterError("Pauli string needs at least one letter")
        if any(x not in (0, 1, 2, 3) for x in letters):
            raise ParameterError(f"Pauli letters must be in 0..3, got {letters}")
        object.__setattr__(self, 'letters', letters)

    @property
    def n(self) -> int:
        return len(self.letters)

    @property
    def weight(self) -> int:
        return sum(1 for x in self.letters if x != 0)

    @property
    def index(self) -> int:
        """Lexicographic index in 0 .. 4^n - 1 (identity is 0)."""
        idx = 0
        for x in self.letters:
            idx = 4 * idx + x
        return idx

    @classmethod
    def from_index(cls, index: int, n: int) -> 'PauliString':
        if not 0 <= index < 4 ** n:
            raise ParameterError(f"index {index} outside 0..{4 ** n - 1}")
        letters = []
        for _ in range(n):
            index, letter = divmod(index, 4)
            letters.append(letter)
        return cls(tuple(reversed(letters)))

    @classmethod
    def from_label(cls, label: str) -> 'PauliString':
        try:
            return cls(tuple(PAULI_LETTERS.index(c) for c in label.upper()))
        except ValueError:
            raise ParameterError(f"invalid Pauli label '{label}'") from None

    @property
    def label(self) -> str:
        return ''.join(PAULI_LETTERS[x] for x in self.letters)

    def matrix(self, normalized: bool = True) -> np.ndarray:
        """Dense 2^n x 2^n matrix, divided by sqrt(2^n) when normalized."""
        mat = reduce(np.kron, (PAULIS[x] for x in self.letters))
        if normalized:
            mat = mat / np.sqrt(2 ** self.n)
        return mat


@lru_cache(maxsize=None)
def _all_weights(n: int) -> np.ndarray:
    weights = np.zeros(1, dtype=np.int64)
    step = np.array([0, 1, 1, 1], dtype=np.int64)
    for _ in range(n):
        weights = (weights[:, None] + step[None, :]).ravel()
    weights.setflags(write=False)
    return weights


def pauli_weights(n: int) -> np.ndarray:
    """Weights w(alpha) of the 4^n - 1 non-identity strings in Bloch coordinate order."""
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    return _all_weights(n)[1:]


def pauli_basis(n: int, normalized: bool = True) -> np.ndarray:
    """All 4^n Pauli matrices stacked in lexicographic order, shape (4^n, 2^n, 2^n)."""
    if not 1 <= n <= MAX_MATRIX_QUBITS:
        raise DimensionError(f"n={n} outside 1..{MAX_MATRIX_QUBITS}")
    return np.stack([PauliString.from_index(i, n).matrix(normalized) for i in range(4 ** n)])


@dataclass(frozen=True, eq=False)
class BlochVector:
    """Real coordinates of a state in the normalized Pauli basis, identity excluded."""

    n: int
    coords: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ParameterError(f"n must be >= 1, got {self.n}")
        coords = np.array(self.coords, dtype=float).ravel()
        if coords.size != 4 ** self.n - 1:
            raise DimensionError(
                f"Bloch vector for n={self.n} needs {4 ** self.n - 1} coordinates, got {coords.size}"
            )
        coords.setflags(write=False)
        object.__setattr__(self, 'coords', coords)

    @property
    def weights(self) -> np.ndarray:
        return pauli_weights(self.n)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))

    @property
    def max_norm(self) -> float:
        """Radius sqrt(1 - 1/d) of the pure-state sphere."""
        return float(np.sqrt(1.0 - 2.0 ** -self.n))

    def coordinate(self, pauli: PauliString) -> float:
        if pauli.n != self.n or pauli.index == 0:
            raise ParameterError(f"{pauli.label} is not a non-identity string on {self.n} qubits")
        return float(self.coords[pauli.index - 1])

    @classmethod
    def zeros(cls, n: int) -> 'BlochVector':
        return cls(n, np.zeros(4 ** n - 1))


def pauli_expand(rho: DensityMatrix) -> BlochVector:
    """
    Bloch coordinates r_alpha = Tr(rho sigma_alpha) / sqrt(d) of a state.

    Args:
        rho: Density matrix on n qubits

    Returns:
        BlochVector with the 4^n - 1 non-identity coefficients

    Raises:
        DimensionError: dimension is not a power of two
        ValidationError: rho is not Hermitian within tolerance
    """
    data = np.asarray(rho.data if isinstance(rho, DensityMatrix) else rho, dtype=complex)
    if data.ndim != 2 or data.shape[0] != data.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {data.shape}")
    n = num_qubits(data.shape[0])
    herm = float(np.max(np.abs(data - data.conj().T)))
    if herm > HERMITIAN_TOL:
        raise ValidationError(f"matrix is not Hermitian (deviation {herm:.3g})")

    # Contract one (row, column) qubit pair per step; the Pauli axis is appended last.
    t = data.reshape((2,) * (2 * n))
    for k in range(n):
        t = np.tensordot(t, PAULIS, axes=([0, n - k], [2, 1]))
    coeffs = t.reshape(-1).real / np.sqrt(2 ** n)
    return BlochVector(n, coeffs[1:])


def bloch_to_state(v: BlochVector) -> DensityMatrix:
    """
    rho = I/d + sum_alpha r_alpha sigma_alpha / sqrt(d).

    The result is Hermitian with unit trace; positivity holds only when v
    lies in the Bloch body, so callers that need a state call validate().
    """
    n = v.n
    if n > MAX_MATRIX_QUBITS:
        raise DimensionError(f"n={n} exceeds dense limit of {MAX_MATRIX_QUBITS}")
    full = np.concatenate(([2.0 ** (-n / 2)], v.coords)).astype(complex)
    t = full.reshape((4,) * n)
    for _ in range(n):
        t = np.tensordot(t, PAULIS, axes=([0], [0]))
    order = list(range(0, 2 * n, 2)) + list(range(1, 2 * n, 2))
    d = 2 ** n
    mat = t.transpose(order).reshape(d, d) / np.sqrt(d)
    return DensityMatrix(0.5 * (mat + mat.conj().T), check=False)


def _check_same_dim(rho: DensityMatrix, sigma: DensityMatrix) -> None:
    if rho.dim != sigma.dim:
        raise DimensionError(f"dimension mismatch: {rho.dim} vs {sigma.dim}")


def hs_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Hilbert-Schmidt distance ||rho - sigma||_2, equal to the Bloch distance."""
    _check_same_dim(rho, sigma)
    return float(np.linalg.norm(rho.data - sigma.data, 'fro'))


def trace_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Trace distance 0.5 * ||rho - sigma||_1."""
    _check_same_dim(rho, sigma)
    diff = rho.data - sigma.data
    eig = np.linalg.eigvalsh(0.5 * (diff + diff.conj().T))
    return float(min(1.0, 0.5 * np.abs(eig).sum()))


def random_state(n: int, rng: np.random.Generator, rank: Optional[int] = None) -> DensityMatrix:
    """Random state from the normalized Ginibre construction G G^dagger / Tr."""
    d = 2 ** n
    rank = d if rank is None else int(rank)
    if not 1 <= rank <= d:
        raise ParameterError(f"rank must be in 1..{d}, got {rank}")
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    mat = g @ g.conj().T
    mat = 0.5 * (mat + mat.conj().T)
    return DensityMatrix(mat / np.trace(mat).real)


def random_pure_state(n: int, rng: np.random.Generator) -> DensityMatrix:
    d = 2 ** n
    psi = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return DensityMatrix.from_pure(psi)


__all__ = [
    'PAULIS',
    'DensityMatrix',
    'PauliString',
    'BlochVector',
    'pauli_weights',
    'pauli_basis',
    'pauli_expand',
    'bloch_to_state',
    'hs_distance',
    'trace_distance',
    'random_state',
    'random_pure_state',
]
