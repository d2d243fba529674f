"""
PyIDCap Bounds API Module

The bound catalogue for identification over the qubit depolarizing
channel and desk-scale checks of identification codes:

- simultaneous codes built on product measurements: 1 - h(p/2)
- unrestricted codes, ellipsoid covering bound
- unrestricted codes, general covering bound log|A| + C(N) = 2 - h(p/2)
- message counts from epsilon-nets of pure states
- curve sweeps over a p-grid with the crossing of the two unrestricted bounds

License: MIT
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from pyidcap.channels import ProductBasis, depolarize
from pyidcap.covering_geometry import (
    BREAKPOINT_P,
    BoundPoint,
    asymptotic_unrestricted_bound,
    finite_n_unrestricted_bound,
)
from pyidcap.errors import DimensionError, ParameterError, ValidationError
from pyidcap.info_measures import binary_entropy
from pyidcap.pauli_bloch import DensityMatrix, trace_distance
from pyidcap.utils import OPERATOR_TOL, check_lambdas, check_probability, parallel_map

logger = logging.getLogger(__name__)

MAX_CODE_QUBITS = 3
CROSSING_TOL = 1e-6
CROSSING_HI = 0.99


def _check_operator(op: np.ndarray, dim: int, label: str) -> np.ndarray:
    mat = np.array(op, dtype=complex)
    if mat.shape != (dim, dim):
        raise DimensionError(f"{label} has shape {mat.shape}, expected ({dim}, {dim})")
    if float(np.max(np.abs(mat - mat.conj().T))) > OPERATOR_TOL:
        raise ValidationError(f"{label} is not Hermitian")
    vals = np.linalg.eigvalsh(0.5 * (mat + mat.conj().T))
    if vals[0] < -OPERATOR_TOL or vals[-1] > 1.0 + OPERATOR_TOL:
        raise ValidationError(f"{label} is outside [0, I]: eigenvalues in [{vals[0]:.3g}, {vals[-1]:.3g}]")
    mat.setflags(write=False)
    return mat


@dataclass(frozen=True, eq=False)
class IdCode:
    """Encoder states rho_i and decoders 0 <= D_i <= I for N messages over N_p^{(x) n}."""

    states: Tuple[DensityMatrix, ...]
    decoders: Tuple[np.ndarray, ...] = field(repr=False)
    n: int
    p: float

    def __post_init__(self) -> None:
        states = tuple(self.states)
        if len(states) < 2:
            raise ValidationError(f"an identification code needs N >= 2 messages, got {len(states)}")
        if len(self.decoders) != len(states):
            raise ValidationError(f"{len(states)} states but {len(self.decoders)} decoders")
        dim = 2 ** int(self.n)
        for i, rho in enumerate(states):
            if rho.dim != dim:
                raise DimensionError(f"state {i} has dimension {rho.dim}, expected {dim}")
        decoders = tuple(_check_operator(d, dim, f"decoder {i}") for i, d in enumerate(self.decoders))
        object.__setattr__(self, 'states', states)
        object.__setattr__(self, 'decoders', decoders)
        object.__setattr__(self, 'p', check_probability(self.p, 'p'))

    @property
    def size(self) -> int:
        return len(self.states)


class IdErrors(NamedTuple):
    lambda1: float
    lambda2: float


def _channel_outputs(code: IdCode) -> List[DensityMatrix]:
    if code.n > MAX_CODE_QUBITS:
        raise DimensionError(f"code checks support n <= {MAX_CODE_QUBITS}, got {code.n}")
    return [depolarize(rho, code.p) for rho in code.states]


def _acceptance_matrix(outputs: Sequence[DensityMatrix], decoders: Sequence[np.ndarray]) -> np.ndarray:
    """A[i, j] = Tr(N(rho_i) D_j)."""
    return np.array([[float(np.real(np.vdot(d.conj().T, out.data))) for d in decoders] for out in outputs])


def verify_id_code(code: IdCode) -> IdErrors:
    """
    Worst-case errors of an identification code.

    Returns:
        (max_i 1 - Tr(N(rho_i) D_i), max_{i != j} Tr(N(rho_i) D_j))
    """
    accept = _acceptance_matrix(_channel_outputs(code), code.decoders)
    type1 = max(0.0, float(np.max(1.0 - np.diag(accept))))
    off = accept[~np.eye(code.size, dtype=bool)]
    type2 = min(1.0, max(0.0, float(off.max())))
    return IdErrors(type1, type2)


def separation_check(code: IdCode) -> float:
    """min over i != j of the trace distance between channel outputs."""
    outputs = _channel_outputs(code)
    return min(trace_distance(outputs[i], outputs[j])
               for i in range(len(outputs)) for j in range(i + 1, len(outputs)))


def verify_transmission_code(states: Sequence[DensityMatrix], decoders: Sequence[np.ndarray],
                             p: float) -> float:
    """
    Maximal error max_i 1 - Tr(N(rho_i) D_i) of a transmission code.

    The decoders must form a POVM.
    """
    if len(states) != len(decoders) or not states:
        raise ValidationError(f"{len(states)} states but {len(decoders)} decoders")
    dim = states[0].dim
    n = dim.bit_length() - 1
    if n > MAX_CODE_QUBITS:
        raise DimensionError(f"code checks support n <= {MAX_CODE_QUBITS}, got {n}")
    povm = [_check_operator(d, dim, f"decoder {i}") for i, d in enumerate(decoders)]
    if float(np.max(np.abs(sum(povm) - np.eye(dim)))) > OPERATOR_TOL:
        raise ValidationError("transmission decoders do not sum to the identity")
    outputs = [depolarize(rho, p) for rho in states]
    accept = _acceptance_matrix(outputs, povm)
    return max(0.0, float(np.max(1.0 - np.diag(accept))))


def simultaneous_decoders(basis: ProductBasis, subsets: Sequence[Sequence[int]]) -> List[np.ndarray]:
    """Decoders D_i = sum_{x in I_i} E_x coarse-graining one complete product measurement."""
    decoders = []
    for i, subset in enumerate(subsets):
        mat = np.zeros((basis.dim, basis.dim), dtype=complex)
        for x in set(subset):
            if not 0 <= x < basis.dim:
                raise ParameterError(f"outcome {x} of subset {i} is outside 0..{basis.dim - 1}")
            mat += basis.projector(x)
        decoders.append(mat)
    return decoders


def simultaneous_capacity_product(p: float) -> float:
    """Simultaneous ID capacity with product measurements, 1 - h(p/2)."""
    p = check_probability(p, 'p')
    return 1.0 - binary_entropy(p / 2.0)


def general_channel_bound(log_dim_a: float, classical_capacity: float) -> float:
    """General strong converse bound log|A| + C(N)."""
    if log_dim_a < 0 or classical_capacity < 0:
        raise ParameterError(f"inputs must be non-negative, got {log_dim_a}, {classical_capacity}")
    return float(log_dim_a) + float(classical_capacity)


def general_bound_depolarizing(p: float) -> float:
    """2 - h(p/2), the general bound specialized to the qubit depolarizing channel."""
    return general_channel_bound(1.0, simultaneous_capacity_product(p))


def epsilon_net_count(dim: int, delta: float) -> float:
    """log2 of the size bound (5/delta)^(2 dim) of a delta-net of pure states."""
    if int(dim) < 1:
        raise ParameterError(f"dim must be >= 1, got {dim}")
    if not 0.0 < delta < 1.0:
        raise ParameterError(f"delta must lie in (0, 1), got {delta}")
    return 2.0 * int(dim) * math.log2(5.0 / delta)


def _net_margin(lambda1: float, lambda2: float, eps: float) -> float:
    margin = check_lambdas(lambda1, lambda2) - 2.0 * eps
    if eps <= 0 or margin <= 0:
        raise ParameterError(f"eps={eps} must lie in (0, (1 - lambda1 - lambda2)/2)")
    return margin


def net_message_bound_log2(dim_a: int, n: int, dim_r: float, lambda1: float = 0.1,
                           lambda2: float = 0.1, eps: float = 0.1) -> float:
    """log2 of N <= (10 / (1 - lambda1 - lambda2 - 2 eps))^(2 |A|^n |R|)."""
    margin = _net_margin(lambda1, lambda2, eps)
    if dim_a < 1 or n < 1 or dim_r < 1:
        raise ParameterError(f"dimensions and n must be >= 1, got {dim_a}, {n}, {dim_r}")
    return 2.0 * float(dim_a) ** n * float(dim_r) * math.log2(10.0 / margin)


def general_finite_n_bound(n: int, log_dim_a: float, sup_mi: float, alpha: float = 1.5,
                           lambda1: float = 0.1, lambda2: float = 0.1, eps: float = 0.1) -> float:
    """
    (1/n) log log of the epsilon-net message bound after low-rank covering.

    The reference system is reduced to rank |R| <= 2^(n I - alpha/(alpha-1) log eps - 2) + 1,
    I being the per-use sandwiched alpha-MI supremum. Tends to log|A| + I.
    """
    if int(n) < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    if not 1.0 < alpha < 2.0:
        raise ParameterError(f"alpha must lie in (1, 2), got {alpha}")
    margin = _net_margin(lambda1, lambda2, eps)
    x = n * sup_mi - alpha / (alpha - 1.0) * math.log2(eps) - 2.0
    log_r = x + math.log2(1.0 + 2.0 ** -x) if x > -50 else 0.0
    log_log_n = 1.0 + n * log_dim_a + log_r + math.log2(math.log2(10.0 / margin))
    return log_log_n / n


def find_crossing(lo: float = BREAKPOINT_P, hi: float = CROSSING_HI, tol: float = CROSSING_TOL) -> float:
    """
    Bisect for the p where the ellipsoid bound meets the general bound 2 - h(p/2).

    Raises:
        ParameterError: the difference does not change sign on [lo, hi]
    """
    def diff(p: float) -> float:
        return asymptotic_unrestricted_bound(p) - general_bound_depolarizing(p)

    f_lo, f_hi = diff(lo), diff(hi)
    if f_lo * f_hi > 0:
        raise ParameterError(f"no sign change on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = diff(mid)
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    crossing = 0.5 * (lo + hi)
    logger.debug("find_crossing -> %.9f", crossing)
    return crossing


@dataclass(frozen=True)
class CurveParams:
    """Parameters shared by every point of a sweep."""

    lambda1: float = 0.1
    lambda2: float = 0.1
    theta: float = 0.25
    alpha: float = 1.5
    finite_n: Optional[int] = None
    threads: Optional[int] = 1

    def as_dict(self) -> Dict[str, Any]:
        return {
            'lambda1': self.lambda1,
            'lambda2': self.lambda2,
            'theta': self.theta,
            'alpha': self.alpha,
            'n': self.finite_n,
        }


@dataclass(frozen=True)
class CurvePoint:
    p: float
    sim_cap: float
    unrestricted_bound: float
    general_bound: float
    finite_n_bound: Optional[float] = None


@dataclass(frozen=True)
class BoundCurve:
    """Bound values on a strictly increasing p-grid plus the crossing point."""

    points: Tuple[CurvePoint, ...]
    params: CurveParams
    crossing_p: float

    @property
    def grid(self) -> List[float]:
        return [pt.p for pt in self.points]

    def bound_points(self, kind: str) -> List[BoundPoint]:
        """Points of one bound kind as BoundPoint records."""
        attr = {
            'simultaneous': 'sim_cap',
            'asymptotic': 'unrestricted_bound',
            'general': 'general_bound',
            'finite_n': 'finite_n_bound',
        }.get(kind)
        if attr is None:
            raise ParameterError(f"unknown bound kind '{kind}'")
        return [BoundPoint(pt.p, getattr(pt, attr), kind)
                for pt in self.points if getattr(pt, attr) is not None]

    def metadata(self) -> Dict[str, Any]:
        meta = self.params.as_dict()
        meta['crossing_p'] = self.crossing_p
        return meta


def _check_grid(p_grid: Sequence[float]) -> List[float]:
    grid = [float(p) for p in p_grid]
    if not grid:
        raise ParameterError("p-grid is empty")
    for p in grid:
        if not 0.0 <= p < 1.0:
            raise ParameterError(f"grid value {p} outside [0, 1)")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ParameterError("p-grid must be strictly increasing")
    return grid


def sweep_curves(p_grid: Sequence[float], params: Optional[CurveParams] = None) -> BoundCurve:
    """
    Evaluate every bound on a p-grid.

    Args:
        p_grid: Strictly increasing values in [0, 1)
        params: Error levels, theta, alpha, optional block length for the
            finite-n column and the worker count

    Returns:
        BoundCurve with one CurvePoint per grid value and the crossing point
    """
    params = params or CurveParams()
    grid = _check_grid(p_grid)
    check_lambdas(params.lambda1, params.lambda2)

    def evaluate(p: float) -> CurvePoint:
        finite = None
        if params.finite_n is not None:
            finite = finite_n_unrestricted_bound(params.finite_n, p, params.lambda1, params.lambda2,
                                                 params.theta)
        return CurvePoint(
            p=p,
            sim_cap=simultaneous_capacity_product(p),
            unrestricted_bound=asymptotic_unrestricted_bound(p),
            general_bound=general_bound_depolarizing(p),
            finite_n_bound=finite,
        )

    points = tuple(parallel_map(evaluate, grid, params.threads))
    for pt in points:
        if min(pt.sim_cap, pt.unrestricted_bound, pt.general_bound) < 0:
            raise ValidationError(f"negative bound value at p={pt.p}")
    return BoundCurve(points, params, find_crossing())


__all__ = [
    'IdCode',
    'IdErrors',
    'verify_id_code',
    'separation_check',
    'verify_transmission_code',
    'simultaneous_decoders',
    'simultaneous_capacity_product',
    'general_channel_bound',
    'general_bound_depolarizing',
    'epsilon_net_count',
    'net_message_bound_log2',
    'general_finite_n_bound',
    'find_crossing',
    'CurveParams',
    'CurvePoint',
    'BoundCurve',
    'sweep_curves',
]
