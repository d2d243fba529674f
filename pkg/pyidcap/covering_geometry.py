"""
PyIDCap Covering Geometry Module

The image of the Bloch body under N_p^{(x) n}, scaled by the separation
1/(1 - lambda1 - lambda2), is an ellipsoid whose semi-axes depend only on
Pauli weight. This module evaluates Dumer's bound on its unit-ball
covering number, the weight thresholds that decide which axes matter, the
Chernoff-Cramer tail that controls their count, and the resulting finite-n
and asymptotic strong-converse bounds for unrestricted identification.

Semi-axes are stored as natural logarithms since C_n (1 - p)^k under- and
overflows double precision long before the block lengths of interest.
Multiplicities are Python integers.

License: MIT
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Tuple, Union

import numpy as np
from scipy.special import gammaln, logsumexp

from pyidcap.errors import ParameterError, ValidationError
from pyidcap.info_measures import binary_entropy, binary_rel_entropy
from pyidcap.utils import check_lambdas, check_probability

logger = logging.getLogger(__name__)

# p at which gamma(p) = 3/4 and the unrestricted bound leaves the value 2
BREAKPOINT_P = 1.0 - 2.0 ** (-2.0 / 3.0)
NON_IDENTITY_FRACTION = 0.75
EXACT_SUM_MAX_N = 4096
BOUND_KINDS = ('finite_n', 'asymptotic', 'simultaneous', 'general')


@dataclass(frozen=True)
class AxisGroup:
    """multiplicity semi-axes of common length exp(log_axis)."""

    multiplicity: int
    log_axis: float

    def __post_init__(self) -> None:
        if int(self.multiplicity) < 1:
            raise ValidationError(f"multiplicity must be >= 1, got {self.multiplicity}")
        if not math.isfinite(self.log_axis):
            raise ValidationError(f"semi-axis must be positive and finite, got log {self.log_axis}")
        object.__setattr__(self, 'multiplicity', int(self.multiplicity))

    @property
    def semi_axis(self) -> float:
        return math.exp(self.log_axis)


@dataclass(frozen=True)
class EllipsoidSpec:
    """Grouped semi-axes of an ellipsoid centred at the origin."""

    groups: Tuple[AxisGroup, ...]

    def __post_init__(self) -> None:
        if not self.groups:
            raise ValidationError("ellipsoid needs at least one axis group")
        object.__setattr__(self, 'groups', tuple(self.groups))

    @property
    def dimension(self) -> int:
        return sum(g.multiplicity for g in self.groups)

    def scaled(self, factor: float) -> 'EllipsoidSpec':
        """Ellipsoid with every semi-axis multiplied by factor."""
        if factor <= 0:
            raise ParameterError(f"scale factor must be positive, got {factor}")
        shift = math.log(factor)
        return EllipsoidSpec(tuple(AxisGroup(g.multiplicity, g.log_axis + shift) for g in self.groups))

    @classmethod
    def from_axes(cls, pairs) -> 'EllipsoidSpec':
        """Build from (multiplicity, semi_axis) pairs."""
        groups = []
        for mult, axis in pairs:
            if axis <= 0:
                raise ValidationError(f"semi-axis must be positive, got {axis}")
            groups.append(AxisGroup(mult, math.log(axis)))
        return cls(tuple(groups))


class Partition(NamedTuple):
    j_theta0: int
    j_theta1: int
    j_big: int
    mu_theta: int
    k_log: float


@dataclass(frozen=True)
class BoundPoint:
    """One evaluated bound: value refers to (1/n) log log N or its limit."""

    p: float
    value: float
    kind: str

    def __post_init__(self) -> None:
        if self.kind not in BOUND_KINDS:
            raise ParameterError(f"kind must be one of {BOUND_KINDS}, got '{self.kind}'")
        if self.p < 1.0 and self.value < 0.0:
            raise ValidationError(f"bound value {self.value} is negative")


def _check_theta(theta: float) -> float:
    theta = float(theta)
    if not 0.0 < theta < 0.5:
        raise ParameterError(f"theta must lie in (0, 1/2), got {theta}")
    return theta


def _check_noise(p: float) -> float:
    p = check_probability(p, 'p')
    if p >= 1.0:
        raise ParameterError("p must be < 1 for the output ellipsoid")
    return p


def log_c_n(n: int, lambda1: float, lambda2: float) -> float:
    """ln C_n with C_n = sqrt(2^n - 1) / (1 - lambda1 - lambda2)."""
    if int(n) < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    gap = check_lambdas(lambda1, lambda2)
    return 0.5 * math.log(2 ** int(n) - 1) - math.log(gap)


def depolarizing_ellipsoid(n: int, p: float, lambda1: float = 0.1, lambda2: float = 0.1) -> EllipsoidSpec:
    """
    Output ellipsoid of N_p^{(x) n} scaled by 1/(1 - lambda1 - lambda2).

    Group k (Pauli weight k = 1..n) has multiplicity N_k = C(n, k) 3^k and
    semi-axis a(k) = C_n (1 - p)^k.
    """
    p = _check_noise(p)
    log_c = log_c_n(n, lambda1, lambda2)
    log_contraction = math.log1p(-p)
    groups = tuple(AxisGroup(math.comb(n, k) * 3 ** k, log_c + k * log_contraction)
                   for k in range(1, n + 1))
    spec = EllipsoidSpec(groups)
    assert spec.dimension == 4 ** n - 1
    return spec


def ellipsoid_partition(spec: EllipsoidSpec, theta: float) -> Partition:
    """
    Split the axes into J_theta0 = {a^2 <= 1 - theta}, J_theta1 = {1 - theta < a^2 <= 1}
    and J = {a > 1}.

    Returns:
        Partition with the three cardinalities, mu_theta = |J_theta1| + |J|
        and K = sum over J of ln a
    """
    theta = _check_theta(theta)
    log_floor = 0.5 * math.log1p(-theta)
    j0 = j1 = j_big = 0
    k_log = 0.0
    for group in spec.groups:
        if group.log_axis <= log_floor:
            j0 += group.multiplicity
        elif group.log_axis <= 0.0:
            j1 += group.multiplicity
        else:
            j_big += group.multiplicity
            k_log += group.multiplicity * group.log_axis
    return Partition(j0, j1, j_big, j1 + j_big, k_log)


def _scaled_product(count: int, factor: float) -> float:
    try:
        return float(count) * factor
    except OverflowError:
        return math.inf


def dumer_bound(spec: EllipsoidSpec, theta: float = 0.25, radius: float = 1.0) -> float:
    """
    Dumer's bound on the natural log of the radius-r ball covering number.

    ln |M| <= K + mu_theta ln(3/theta), evaluated for spec / radius.

    Example:
        >>> round(dumer_bound(EllipsoidSpec.from_axes([(1, math.e)]), 0.3), 4)
        3.3026
    """
    theta = _check_theta(theta)
    if radius <= 0:
        raise ParameterError(f"radius must be positive, got {radius}")
    if radius != 1.0:
        spec = spec.scaled(1.0 / radius)
    part = ellipsoid_partition(spec, theta)
    return part.k_log + _scaled_product(part.mu_theta, math.log(3.0 / theta))


def weight_thresholds(n: int, p: float, theta: float = 0.25, lambda1: float = 0.1,
                      lambda2: float = 0.1) -> Tuple[int, int]:
    """
    Largest weights whose axes survive: (k_theta, k_0).

    k_theta = max{k : C_n^2 (1 - p)^(2k) > 1 - theta} and
    k_0 = max{k : C_n (1 - p)^k > 1}, each 0 when no k in 1..n qualifies.
    """
    theta = _check_theta(theta)
    p = _check_noise(p)
    log_c = log_c_n(n, lambda1, lambda2)
    log_contraction = math.log1p(-p)
    log_floor = 0.5 * math.log1p(-theta)
    k_theta = k_0 = 0
    for k in range(1, n + 1):
        log_axis = log_c + k * log_contraction
        if log_axis > log_floor:
            k_theta = k
        if log_axis > 0.0:
            k_0 = k
    return k_theta, k_0


def mu_theta(n: int, p: float, theta: float = 0.25, lambda1: float = 0.1, lambda2: float = 0.1) -> int:
    """mu_theta = sum_{k=1}^{k_theta} C(n, k) 3^k, exactly."""
    k_theta, _ = weight_thresholds(n, p, theta, lambda1, lambda2)
    return sum(math.comb(n, k) * 3 ** k for k in range(1, k_theta + 1))


def weight_count_log2(n: int, k_max: int, method: str = 'exact') -> float:
    """
    log2 of sum_{k=1}^{k_max} C(n, k) 3^k.

    Args:
        n: Number of qubits
        k_max: Largest weight counted (clipped to n)
        method: 'exact' for big-integer arithmetic, 'lgamma' for log-space

    Returns:
        The log-count; -inf when k_max < 1
    """
    k_max = min(int(k_max), int(n))
    if k_max < 1:
        return -math.inf
    if method == 'exact':
        return math.log2(sum(math.comb(n, k) * 3 ** k for k in range(1, k_max + 1)))
    if method == 'lgamma':
        k = np.arange(1, k_max + 1)
        terms = gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1) + k * math.log(3.0)
        return float(logsumexp(terms) / math.log(2.0))
    raise ParameterError(f"unknown method '{method}', expected 'exact' or 'lgamma'")


def chernoff_tail(n: int, q: float, a: float, b: float = 0.0) -> float:
    """
    Chernoff-Cramer bound on Pr(X <= a n + b) for X ~ Binomial(n, q).

    Returns 2^(-n D(a + b/n || q)) when a + b/n <= q, else 1.
    """
    q = check_probability(q, 'q', open_low=True, open_high=True)
    if a < 0 or b < 0:
        raise ParameterError(f"a and b must be non-negative, got {a}, {b}")
    x = a + b / n
    if x >= q:
        return 1.0
    return 2.0 ** (-n * binary_rel_entropy(x, q))


def chernoff_optimizer(n: int, q: float, a: float, b: float = 0.0) -> float:
    """Optimal exponent t* = log[q (1 - x) / (x (1 - q))], x = a + b/n, clipped at 0."""
    q = check_probability(q, 'q', open_low=True, open_high=True)
    x = a + b / n
    if x >= q:
        return 0.0
    if x <= 0:
        return math.inf
    return max(0.0, math.log2(q * (1.0 - x) / (x * (1.0 - q))))


def binomial_lower_tail_exact(n: int, q: Union[float, Fraction], threshold: float) -> Fraction:
    """Exact Pr(X <= threshold) for X ~ Binomial(n, q) in rational arithmetic."""
    q = Fraction(q)
    if not 0 <= q <= 1:
        raise ParameterError(f"q must lie in [0, 1], got {q}")
    top = min(int(math.floor(threshold)), n)
    if top < 0:
        return Fraction(0)
    return sum((math.comb(n, k) * q ** k * (1 - q) ** (n - k) for k in range(top + 1)), Fraction(0))


def gamma(p: float) -> float:
    """gamma(p) = -1 / (2 log2(1 - p)) for p in (0, 1)."""
    p = check_probability(p, 'p', open_low=True, open_high=True)
    return -1.0 / (2.0 * math.log2(1.0 - p))


def weight_exponent(g: float) -> float:
    """h(g) + g log2 3, the growth rate of the weight count up to g n."""
    return binary_entropy(g) + g * math.log2(3.0)


def weight_threshold_real(n: int, p: float, theta: float = 0.25, lambda1: float = 0.1,
                          lambda2: float = 0.1) -> float:
    """Real k solving C_n^2 (1 - p)^(2k) = 1 - theta; k_theta never exceeds it."""
    theta = _check_theta(theta)
    p = _check_noise(p)
    if p == 0.0:
        return math.inf
    return (2.0 * log_c_n(n, lambda1, lambda2) - math.log1p(-theta)) / (-2.0 * math.log1p(-p))


def mu_theta_chernoff_log2(n: int, p: float, theta: float = 0.25, lambda1: float = 0.1,
                           lambda2: float = 0.1) -> float:
    """
    Chernoff relaxation of log2 mu_theta: 2n + log2 Pr(W <= T).

    W counts non-identity letters of a uniform Pauli string, so
    W ~ Binomial(n, 3/4), and T = gamma(p) log2(2^n - 1) + c with the
    constant c = gamma(p) (-2 log2(1 - lambda1 - lambda2) - log2(1 - theta)).
    """
    threshold = weight_threshold_real(n, p, theta, lambda1, lambda2)
    if not math.isfinite(threshold):
        return 2.0 * n
    g = gamma(p)
    gap = check_lambdas(lambda1, lambda2)
    a = g * math.log2(2 ** int(n) - 1) / n
    c = max(0.0, g * (-2.0 * math.log2(gap) - math.log2(1.0 - theta)))
    tail = chernoff_tail(n, NON_IDENTITY_FRACTION, a, c)
    return 2.0 * n + math.log2(tail)


def finite_n_unrestricted_bound(n: int, p: float, lambda1: float = 0.1, lambda2: float = 0.1,
                                theta: float = 0.25, method: str = 'exact') -> float:
    """
    Upper bound on (1/n) log log N(n, lambda1, lambda2) for unrestricted ID codes.

    (1/n) [log2 mu_theta + log2 log2(3 C_n / theta)]

    Args:
        n: Block length
        p: Depolarizing parameter in [0, 1)
        lambda1: Type-I error level
        lambda2: Type-II error level
        theta: Partition parameter in (0, 1/2)
        method: 'exact' uses the exact weight count up to k_theta; 'chernoff'
            replaces log2 mu_theta by its Chernoff-Cramer relaxation

    Returns:
        The bound; 0 when a single unit ball covers the ellipsoid
    """
    theta = _check_theta(theta)
    p = _check_noise(p)
    k_theta, _ = weight_thresholds(n, p, theta, lambda1, lambda2)
    if k_theta == 0:
        return 0.0
    if method == 'exact':
        count_method = 'exact' if n <= EXACT_SUM_MAX_N else 'lgamma'
        log_mu = weight_count_log2(n, k_theta, count_method)
    elif method == 'chernoff':
        log_mu = min(mu_theta_chernoff_log2(n, p, theta, lambda1, lambda2), math.log2(4 ** n - 1))
    else:
        raise ParameterError(f"unknown method '{method}', expected 'exact' or 'chernoff'")
    log_cover = math.log2(3.0 / theta) + log_c_n(n, lambda1, lambda2) / math.log(2.0)
    value = (log_mu + math.log2(log_cover)) / n
    logger.debug("finite_n_unrestricted_bound n=%d p=%g k_theta=%d method=%s -> %.9g",
                 n, p, k_theta, method, value)
    return value


def asymptotic_unrestricted_bound(p: float) -> float:
    """
    Limit of the unrestricted bound: 2 for p <= 1 - 2^(-2/3), else 2 - D(gamma(p) || 3/4).

    Returns 0 at p = 1.
    """
    p = check_probability(p, 'p')
    if p >= 1.0:
        return 0.0
    if p <= BREAKPOINT_P:
        return 2.0
    return 2.0 - binary_rel_entropy(gamma(p), NON_IDENTITY_FRACTION)


__all__ = [
    'BREAKPOINT_P',
    'AxisGroup',
    'EllipsoidSpec',
    'Partition',
    'BoundPoint',
    'log_c_n',
    'depolarizing_ellipsoid',
    'ellipsoid_partition',
    'dumer_bound',
    'weight_thresholds',
    'mu_theta',
    'weight_count_log2',
    'chernoff_tail',
    'chernoff_optimizer',
    'binomial_lower_tail_exact',
    'gamma',
    'weight_exponent',
    'weight_threshold_real',
    'mu_theta_chernoff_log2',
    'finite_n_unrestricted_bound',
    'asymptotic_unrestricted_bound',
]
