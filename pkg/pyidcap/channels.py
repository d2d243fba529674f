"""
PyIDCap Channels Module

The qubit depolarizing channel on matrices and on Bloch vectors, complete
product measurements, the dephasing channel, the binary symmetric channel
and the reduction of a depolarized product measurement to an n-fold BSC
with crossover p/2.

Outcome strings are packed big-endian: bit x_i = 0 selects the first
vector of the qubit-i basis and x_1 is the most significant bit.

License: MIT
"""

import logging
from dataclasses import dataclass, field
from functools import reduce
from typing import Sequence, Tuple, Union

import numpy as np
from scipy.stats import unitary_group

from pyidcap.errors import AlphabetError, DimensionError, ValidationError
from pyidcap.pauli_bloch import BlochVector, DensityMatrix
from pyidcap.utils import (
    CLAMP_TOL,
    PROB_TOL,
    check_probability,
    is_power_of_two,
    tv_distance,
)

logger = logging.getLogger(__name__)

BASIS_TOL = 1e-12


def _as_probs(values: Sequence[float], what: str = 'distribution') -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionError(f"{what} must be a non-empty vector, got shape {arr.shape}")
    if np.any(arr < -CLAMP_TOL) or not np.all(np.isfinite(arr)):
        raise ValidationError(f"{what} has negative or non-finite entries: min {arr.min():.3g}")
    arr = np.clip(arr, 0.0, None)
    total = arr.sum()
    if abs(total - 1.0) > PROB_TOL:
        raise ValidationError(f"{what} sums to {total:.15g}, expected 1")
    return arr


@dataclass(frozen=True, eq=False)
class ProbDist:
    """Probability vector over a finite alphabet {0, ..., k-1}."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        arr = _as_probs(self.probs)
        arr.setflags(write=False)
        object.__setattr__(self, 'probs', arr)

    @property
    def size(self) -> int:
        return self.probs.size

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.probs > 0)

    @property
    def n_bits(self) -> int:
        """n for an alphabet of size 2^n."""
        if not is_power_of_two(self.size):
            raise AlphabetError(f"alphabet size {self.size} is not a power of two")
        return self.size.bit_length() - 1

    @classmethod
    def uniform(cls, k: int) -> 'ProbDist':
        return cls(np.full(k, 1.0 / k))

    @classmethod
    def point_mass(cls, k: int, index: int = 0) -> 'ProbDist':
        probs = np.zeros(k)
        probs[index] = 1.0
        return cls(probs)

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"ProbDist(size={self.size})"


@dataclass(frozen=True, eq=False)
class ChannelKernel:
    """Row-stochastic matrix W[x, y] = W(y|x)."""

    rows: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.rows, dtype=float)
        if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
            raise DimensionError(f"kernel must be a non-empty matrix, got shape {arr.shape}")
        arr = np.stack([_as_probs(row, f"kernel row {x}") for x, row in enumerate(arr)])
        arr.setflags(write=False)
        object.__setattr__(self, 'rows', arr)

    @property
    def input_size(self) -> int:
        return self.rows.shape[0]

    @property
    def output_size(self) -> int:
        return self.rows.shape[1]

    def row(self, x: int) -> ProbDist:
        return ProbDist(self.rows[x])

    def push_forward(self, px: Union[ProbDist, Sequence[float]]) -> ProbDist:
        """Output distribution sum_x P(x) W(.|x)."""
        probs = px.probs if isinstance(px, ProbDist) else _as_probs(px)
        if probs.size != self.input_size:
            raise DimensionError(f"input size {probs.size} does not match kernel {self.input_size}")
        return ProbDist(probs @ self.rows)

    def tensor_power(self, n: int) -> 'ChannelKernel':
        """W^{(x) n} with big-endian packing of input and output strings."""
        if n < 1:
            raise DimensionError(f"tensor power needs n >= 1, got {n}")
        return ChannelKernel(reduce(np.kron, [self.rows] * n))

    def is_symmetric(self) -> bool:
        return bool(np.allclose(self.rows, self.rows[::-1, ::-1]))

    @classmethod
    def bsc(cls, q: float) -> 'ChannelKernel':
        q = check_probability(q, 'q')
        return cls(np.array([[1.0 - q, q], [q, 1.0 - q]]))

    @classmethod
    def identity(cls, k: int) -> 'ChannelKernel':
        return cls(np.eye(k))

    @classmethod
    def constant(cls, row: Sequence[float], k: int) -> 'ChannelKernel':
        """Kernel with k identical rows; its output carries no information."""
        return cls(np.tile(_as_probs(row), (k, 1)))

    def __repr__(self) -> str:
        return f"ChannelKernel({self.input_size}x{self.output_size})"


@dataclass(frozen=True, eq=False)
class ProductBasis:
    """
    One orthonormal basis of C^2 per qubit.

    Each entry is a 2x2 matrix whose columns are the two basis vectors.
    """

    bases: Tuple[np.ndarray, ...] = field(repr=False)

    def __post_init__(self) -> None:
        if len(self.bases) < 1:
            raise DimensionError("product basis needs at least one qubit")
        checked = []
        for k, basis in enumerate(self.bases):
            mat = np.array(basis, dtype=complex)
            if mat.shape != (2, 2):
                raise DimensionError(f"qubit {k} basis must be 2x2, got {mat.shape}")
            gram_err = float(np.max(np.abs(mat.conj().T @ mat - np.eye(2))))
            if gram_err > BASIS_TOL:
                raise ValidationError(f"qubit {k} basis is not orthonormal (Gram error {gram_err:.3g})")
            mat.setflags(write=False)
            checked.append(mat)
        object.__setattr__(self, 'bases', tuple(checked))

    @property
    def n(self) -> int:
        return len(self.bases)

    @property
    def dim(self) -> int:
        return 2 ** self.n

    def unitary(self) -> np.ndarray:
        """Dense 2^n x 2^n matrix whose column x is |Psi_x>."""
        return reduce(np.kron, self.bases)

    def vector(self, x: int) -> np.ndarray:
        bits = [(x >> (self.n - 1 - k)) & 1 for k in range(self.n)]
        return reduce(np.kron, [basis[:, b] for basis, b in zip(self.bases, bits)])

    def projector(self, x: int) -> np.ndarray:
        """E_x = |Psi_x><Psi_x|."""
        psi = self.vector(x)
        return np.outer(psi, psi.conj())

    @classmethod
    def computational(cls, n: int) -> 'ProductBasis':
        return cls(tuple(np.eye(2, dtype=complex) for _ in range(n)))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> 'ProductBasis':
        """Haar-random single-qubit bases."""
        return cls(tuple(unitary_group.rvs(2, random_state=rng) for _ in range(n)))


def _check_basis(rho: DensityMatrix, basis: ProductBasis) -> None:
    if rho.dim != basis.dim:
        raise DimensionError(f"state dimension {rho.dim} does not match basis dimension {basis.dim}")


def depolarize(rho: DensityMatrix, p: float) -> DensityMatrix:
    """
    Apply N_p to every qubit: X -> (1 - p) X + p Tr(X) I/2 per factor.

    Args:
        rho: n-qubit state
        p: Error probability in [0, 1]

    Returns:
        The output state N_p^{(x) n}(rho)
    """
    p = check_probability(p, 'p')
    n = rho.n_qubits
    t = np.asarray(rho.data).reshape((2,) * (2 * n))
    half_identity = np.eye(2) / 2.0
    for k in range(n):
        if p == 0.0:
            break
        reduced = np.trace(t, axis1=k, axis2=n + k)
        replaced = np.moveaxis(np.tensordot(reduced, half_identity, axes=0), [-2, -1], [k, n + k])
        t = (1.0 - p) * t + p * replaced
    d = rho.dim
    return DensityMatrix(t.reshape(d, d))


def depolarize_bloch(v: BlochVector, p: float) -> BlochVector:
    """Contract each coordinate by (1 - p)^w(alpha)."""
    p = check_probability(p, 'p')
    return BlochVector(v.n, v.coords * (1.0 - p) ** v.weights)


def dephase(rho: DensityMatrix, basis: ProductBasis) -> DensityMatrix:
    """Completely dephasing channel in the product basis B."""
    _check_basis(rho, basis)
    u = basis.unitary()
    diag = np.real(np.diag(u.conj().T @ rho.data @ u))
    return DensityMatrix((u * diag) @ u.conj().T)


def diagonal_in_basis(rho: DensityMatrix, basis: ProductBasis) -> ProbDist:
    """r_rho(x) = <Psi_x| rho |Psi_x>."""
    _check_basis(rho, basis)
    u = basis.unitary()
    return ProbDist(np.real(np.einsum('ix,ij,jx->x', u.conj(), rho.data, u)))


def measure_product(rho: DensityMatrix, basis: ProductBasis, p: float) -> ProbDist:
    """Outcome distribution q_rho(x) = Tr(E_x N_p^{(x) n}(rho))."""
    _check_basis(rho, basis)
    return diagonal_in_basis(depolarize(rho, p), basis)


def bsc_apply(dist: Union[ProbDist, Sequence[float]], q: float) -> ProbDist:
    """
    Push a distribution over {0,1}^n through BSC_q^{(x) n}.

    Applied as n single-bit convolutions, one per axis.
    """
    q = check_probability(q, 'q')
    probs = dist.probs if isinstance(dist, ProbDist) else _as_probs(dist)
    if not is_power_of_two(probs.size):
        raise AlphabetError(f"alphabet size {probs.size} is not a power of two")
    n = probs.size.bit_length() - 1
    t = probs.reshape((2,) * n) if n else probs
    for axis in range(n):
        t = (1.0 - q) * t + q * np.flip(t, axis=axis)
    return ProbDist(t.reshape(-1))


def reduction_check(rho: DensityMatrix, basis: ProductBasis, p: float) -> float:
    """
    TV distance between the depolarized product measurement and the BSC image.

    Returns:
        TV(measure_product(rho, B, p), bsc_apply(diag_B(rho), p/2)); zero up to
        rounding for every valid input
    """
    measured = measure_product(rho, basis, p)
    reduced = bsc_apply(diagonal_in_basis(rho, basis), p / 2.0)
    gap = tv_distance(measured.probs, reduced.probs)
    logger.debug("reduction_check n=%d p=%.6g tv=%.3g", basis.n, p, gap)
    return gap


__all__ = [
    'ProbDist',
    'ChannelKernel',
    'ProductBasis',
    'depolarize',
    'depolarize_bloch',
    'dephase',
    'diagonal_in_basis',
    'measure_product',
    'bsc_apply',
    'reduction_check',
]
