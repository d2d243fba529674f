"""
PyIDCap Utility Functions Module

Helpers shared by the numerical modules and the CLI: tolerances,
power-of-two checks, seeded random generators, distances between
probability vectors, a streaming mean/variance accumulator, an ordered
parallel map and the grid/float formatting used by the artifact writers.

License: MIT
"""

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, Sequence, TypeVar

import numpy as np

from pyidcap.errors import DimensionError, ParameterError

logger = logging.getLogger(__name__)

T = TypeVar('T')
R = TypeVar('R')

# Numerical tolerances
HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-12
TRACE_TOL = 1e-12
PROB_TOL = 1e-10
CLAMP_TOL = 1e-14
SUPPORT_TOL = 1e-10
OPERATOR_TOL = 1e-10
REDUCTION_TOL = 1e-10

# Largest qubit count for dense matrix simulation
MAX_MATRIX_QUBITS = 6


def is_power_of_two(value: int) -> bool:
    """Return True when value is a positive power of two (1 counts as 2**0)."""
    return isinstance(value, (int, np.integer)) and value > 0 and (int(value) & (int(value) - 1)) == 0


def num_qubits(dim: int) -> int:
    """
    Number of qubits of a Hilbert space of dimension dim.

    Args:
        dim: Dimension, must be 2**n with n >= 1

    Returns:
        n

    Raises:
        DimensionError: if dim is not a power of two or is 1
    """
    if not is_power_of_two(dim) or dim < 2:
        raise DimensionError(f"dimension {dim} is not a power of two >= 2")
    return int(dim).bit_length() - 1


def check_probability(value: float, name: str = 'p', *, open_low: bool = False,
                      open_high: bool = False) -> float:
    """Validate a scalar in [0, 1] (optionally open at either end) and return it as float."""
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise ParameterError(f"{name} must be a real number, got {value!r}") from None
    low_ok = value > 0.0 if open_low else value >= 0.0
    high_ok = value < 1.0 if open_high else value <= 1.0
    if not (low_ok and high_ok) or math.isnan(value):
        lo = '(' if open_low else '['
        hi = ')' if open_high else ']'
        raise ParameterError(f"{name}={value} outside {lo}0, 1{hi}")
    return value


def check_lambdas(lambda1: float, lambda2: float) -> float:
    """Validate a pair of ID error levels and return the separation 1 - lambda1 - lambda2."""
    check_probability(lambda1, 'lambda1')
    check_probability(lambda2, 'lambda2')
    gap = 1.0 - lambda1 - lambda2
    if gap <= 0.0:
        raise ParameterError(f"lambda1 + lambda2 = {lambda1 + lambda2} must be < 1")
    return gap


def make_rng(seed: Optional[int] = 0) -> np.random.Generator:
    """
    Build a reproducible generator on the counter-based Philox bit generator.

    Args:
        seed: Non-negative integer seed; None draws fresh OS entropy

    Returns:
        numpy Generator
    """
    if seed is not None and int(seed) < 0:
        raise ParameterError(f"seed must be non-negative, got {seed}")
    return np.random.Generator(np.random.Philox(seed))


def trial_seeds(seed: int, count: int) -> List[int]:
    """Derive count independent 64-bit seeds from one master seed."""
    if count < 0:
        raise ParameterError(f"count must be non-negative, got {count}")
    if count == 0:
        return []
    state = np.random.SeedSequence(int(seed)).generate_state(count, dtype=np.uint64)
    return [int(s) for s in state]


def tv_distance(p: Sequence[float], q: Sequence[float]) -> float:
    """Total variation distance 0.5 * sum |p - q| of two probability vectors."""
    p_arr = np.asarray(p, dtype=float).ravel()
    q_arr = np.asarray(q, dtype=float).ravel()
    if p_arr.shape != q_arr.shape:
        raise DimensionError(f"size mismatch: {p_arr.size} vs {q_arr.size}")
    return float(0.5 * np.abs(p_arr - q_arr).sum())


class RunningStats:
    """Streaming mean and variance (Welford update)."""

    def __init__(self) -> None:
        self.count = 0
        self.mean = 0.0
        self._m2 = 0.0
        self.maximum = -math.inf

    def push(self, value: float) -> None:
        self.count += 1
        delta = value - self.mean
        self.mean += delta / self.count
        self._m2 += delta * (value - self.mean)
        self.maximum = max(self.maximum, value)

    def extend(self, values: Iterable[float]) -> 'RunningStats':
        for value in values:
            self.push(float(value))
        return self

    @property
    def variance(self) -> float:
        """Unbiased sample variance; 0 for fewer than two samples."""
        if self.count < 2:
            return 0.0
        return self._m2 / (self.count - 1)

    @property
    def std_err(self) -> float:
        if self.count == 0:
            return 0.0
        return math.sqrt(self.variance / self.count)


def resolve_threads(threads: Optional[int] = None) -> int:
    """Worker count: explicit value, else 0/None meaning os.cpu_count()."""
    if threads is None or threads == 0:
        return os.cpu_count() or 1
    if threads < 0:
        raise ParameterError(f"threads must be >= 0, got {threads}")
    return int(threads)


def parallel_map(func: Callable[[T], R], items: Sequence[T], threads: Optional[int] = None) -> List[R]:
    """
    Apply func to every item, possibly concurrently, and return results in item order.

    Args:
        func: Pure function of one argument
        items: Inputs
        threads: Worker count (None/0 = cpu count, 1 = sequential)

    Returns:
        List of results aligned with items
    """
    items = list(items)
    workers = min(resolve_threads(threads), max(len(items), 1))
    if workers <= 1:
        return [func(item) for item in items]
    logger.debug("parallel_map: %d items on %d threads", len(items), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def parse_grid(text: str) -> List[float]:
    """
    Parse a grid specification.

    Accepts ``start:stop:step`` (start inclusive, stop exclusive) or a
    comma-separated list of values.

    Example:
        >>> parse_grid('0:0.3:0.1')
        [0.0, 0.1, 0.2]
        >>> parse_grid('0.5,0.9')
        [0.5, 0.9]
    """
    if not text or not str(text).strip():
        raise ParameterError("empty grid specification")
    text = str(text).strip()
    try:
        if ':' in text:
            parts = text.split(':')
            if len(parts) != 3:
                raise ParameterError(f"grid '{text}' must be start:stop:step")
            start, stop, step = (float(part) for part in parts)
            if step <= 0:
                raise ParameterError(f"grid step must be positive, got {step}")
            count = max(0, math.ceil((stop - start) / step - 1e-9))
            values = [round(start + i * step, 12) for i in range(count)]
        else:
            values = [float(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise ParameterError(f"cannot parse grid '{text}'") from None
    if not values:
        raise ParameterError(f"grid '{text}' is empty")
    return values


def parse_int_list(text: str) -> List[int]:
    """Parse a comma-separated list of positive integers."""
    try:
        values = [int(part) for part in str(text).split(',') if part.strip()]
    except ValueError:
        raise ParameterError(f"cannot parse integer list '{text}'") from None
    if not values or any(v < 1 for v in values):
        raise ParameterError(f"integer list '{text}' must hold positive values")
    return values


def format_float(value: Optional[float]) -> str:
    """Format a float with 9 significant digits; None becomes the empty string."""
    if value is None:
        return ''
    if math.isinf(value):
        return 'inf' if value > 0 else '-inf'
    return f"{value:.9g}"


def round_sig(value: Optional[float]) -> Optional[float]:
    """Round to 9 significant digits for serialization."""
    if value is None or math.isinf(value) or math.isnan(value):
        return value
    return float(format_float(value))


__all__ = [
    'HERMITIAN_TOL',
    'PSD_TOL',
    'TRACE_TOL',
    'PROB_TOL',
    'CLAMP_TOL',
    'SUPPORT_TOL',
    'OPERATOR_TOL',
    'REDUCTION_TOL',
    'MAX_MATRIX_QUBITS',
    'is_power_of_two',
    'num_qubits',
    'check_probability',
    'check_lambdas',
    'make_rng',
    'trial_seeds',
    'tv_distance',
    'RunningStats',
    'resolve_threads',
    'parallel_map',
    'parse_grid',
    'parse_int_list',
    'format_float',
    'round_sig',
]
