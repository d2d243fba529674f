"""
PyIDCap Soft Covering Module

Random-codebook soft covering: codebook sampling, codebook-induced output
distributions, M-types, the expectation bound on the covering error, the
codebook size that drives it below a target, the finite-n message bound
for simultaneous identification codes and the fixed-input quantum variant
used to replace a state by a low-rank one.

License: MIT
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, List, NamedTuple, Optional, Tuple

import numpy as np

from pyidcap.channels import ChannelKernel, ProbDist, depolarize
from pyidcap.errors import DimensionError, ParameterError, ValidationError
from pyidcap.info_measures import cq_sandwiched_mi, sibson_capacity
from pyidcap.pauli_bloch import DensityMatrix, trace_distance
from pyidcap.utils import (
    RunningStats,
    check_lambdas,
    check_probability,
    make_rng,
    parallel_map,
    trial_seeds,
    tv_distance,
)

logger = logging.getLogger(__name__)

# Statistical slack, in standard errors of the mean
SLACK_SE = 3.0
MIN_TRIALS = 30
MAX_LOW_RANK_DIM = 16
DEFAULT_DRAWS = 1000


@dataclass(frozen=True, eq=False)
class Codebook:
    """M codewords over {0, ..., alphabet_size - 1} and the seed that produced them."""

    codewords: np.ndarray = field(repr=False)
    alphabet_size: int
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        words = np.array(self.codewords, dtype=np.int64).ravel()
        if words.size < 1:
            raise ParameterError("codebook needs at least one codeword")
        if words.min() < 0 or words.max() >= self.alphabet_size:
            raise ValidationError(f"codeword outside alphabet of size {self.alphabet_size}")
        words.setflags(write=False)
        object.__setattr__(self, 'codewords', words)

    @property
    def m(self) -> int:
        return self.codewords.size


@dataclass(frozen=True)
class MType:
    """Empirical distribution with denominators M: counts over X summing to M."""

    counts: Tuple[int, ...]
    m: int

    def __post_init__(self) -> None:
        counts = tuple(int(c) for c in self.counts)
        if self.m < 1:
            raise ParameterError(f"M must be >= 1, got {self.m}")
        if any(c < 0 or c > self.m for c in counts) or sum(counts) != self.m:
            raise ValidationError(f"counts {counts} do not form an M-type for M={self.m}")
        object.__setattr__(self, 'counts', counts)

    @property
    def alphabet_size(self) -> int:
        return len(self.counts)

    @property
    def dist(self) -> ProbDist:
        return ProbDist(np.array(self.counts, dtype=float) / self.m)


class CoveringEstimate(NamedTuple):
    mean_tv: float
    std_err: float


class LowRankCover(NamedTuple):
    mtype: MType
    achieved_td: float


def sample_codebook(px: ProbDist, m: int, seed: Optional[int] = 0) -> Codebook:
    """
    Draw M codewords i.i.d. from px.

    Args:
        px: Codeword distribution
        m: Codebook size, at least 1
        seed: Generator seed; the same seed reproduces the codebook

    Returns:
        Codebook carrying its seed
    """
    if int(m) < 1:
        raise ParameterError(f"codebook size must be >= 1, got {m}")
    rng = make_rng(seed)
    words = rng.choice(px.size, size=int(m), p=px.probs)
    return Codebook(words, px.size, seed)


def empirical_type(cb: Codebook) -> MType:
    return MType(tuple(np.bincount(cb.codewords, minlength=cb.alphabet_size)), cb.m)


def induced_output(cb: Codebook, w: ChannelKernel) -> ProbDist:
    """P^C_Y(y) = (1/M) sum_m W(y | x(m))."""
    if cb.alphabet_size != w.input_size:
        raise DimensionError(f"codebook alphabet {cb.alphabet_size} does not match kernel {w.input_size}")
    return ProbDist(w.rows[cb.codewords].mean(axis=0))


def _check_open_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 1.0 < alpha < 2.0:
        raise ParameterError(f"alpha must lie in (1, 2), got {alpha}")
    return alpha


def covering_rhs(alpha: float, i_alpha: float, m: int) -> float:
    """
    Bound on the expected covering error: 2^(2/alpha - 2 + ((alpha-1)/alpha)(I - log M)).

    Example:
        >>> round(covering_rhs(1.5, 1.0, 2 ** 11), 4)
        0.0394
    """
    alpha = _check_open_alpha(alpha)
    if int(m) < 1:
        raise ParameterError(f"M must be >= 1, got {m}")
    exponent = 2.0 / alpha - 2.0 + (alpha - 1.0) / alpha * (float(i_alpha) - math.log2(int(m)))
    return 2.0 ** exponent


_EXACT_FLOAT_INT = 2 ** 53


def _ceil_pow2(x: float) -> int:
    """Ceiling of 2^x, exact for large exponents through integer shifts."""
    if x < 1000:
        return math.ceil(2.0 ** x)
    whole = math.floor(x)
    mantissa = math.ceil(2.0 ** (x - whole) * 2 ** 52)
    return mantissa << (whole - 52)


def sufficient_m(alpha: float, eps: float, sup_i_alpha: float) -> int:
    """
    Codebook size M = ceil(2^(I + alpha/(alpha-1) (2/alpha - 2 - log eps))).

    The returned M satisfies covering_rhs(alpha, I, M) <= eps. Above 2^53 a
    unit step no longer moves log2(M), so M is the exact integer ceiling and
    the float check is skipped.
    """
    alpha = _check_open_alpha(alpha)
    eps = float(eps)
    if not 0.0 < eps < 1.0:
        raise ParameterError(f"eps must lie in (0, 1), got {eps}")
    exponent = float(sup_i_alpha) + alpha / (alpha - 1.0) * (2.0 / alpha - 2.0 - math.log2(eps))
    m = max(1, _ceil_pow2(exponent))
    while m < _EXACT_FLOAT_INT and covering_rhs(alpha, sup_i_alpha, m) > eps:
        m += 1
    logger.debug("sufficient_m(alpha=%g, eps=%g, I=%g) = 2^%.6f", alpha, eps, sup_i_alpha, math.log2(m))
    return m


def monte_carlo_covering(px: ProbDist, w: ChannelKernel, m: int, trials: int, seed: int = 0,
                         threads: Optional[int] = 1) -> CoveringEstimate:
    """
    Estimate E_C TV(P^C_Y, P_Y) over independent random codebooks.

    Each trial uses its own seed derived from ``seed``; results do not
    depend on the thread count.

    Raises:
        ParameterError: fewer than 30 trials
    """
    if trials < MIN_TRIALS:
        raise ParameterError(f"need at least {MIN_TRIALS} trials, got {trials}")
    if px.size != w.input_size:
        raise DimensionError(f"input size {px.size} does not match kernel {w.input_size}")
    target = w.push_forward(px).probs
    k = px.size

    def one_trial(trial_seed: int) -> float:
        words = make_rng(trial_seed).choice(k, size=int(m), p=px.probs)
        counts = np.bincount(words, minlength=k)
        return tv_distance(counts @ w.rows / int(m), target)

    values = parallel_map(one_trial, trial_seeds(seed, trials), threads)
    stats = RunningStats().extend(values)
    logger.debug("monte_carlo_covering m=%d trials=%d mean=%.6g se=%.3g", m, trials, stats.mean, stats.std_err)
    return CoveringEstimate(stats.mean, stats.std_err)


def mtype_count_bound(alphabet_size: int, m: int) -> float:
    """log2 |X|^M = M log2 |X|, an upper bound on the log number of M-types."""
    if alphabet_size < 1 or m < 1:
        raise ParameterError(f"alphabet size and M must be >= 1, got {alphabet_size}, {m}")
    return m * math.log2(alphabet_size)


def count_mtypes(alphabet_size: int, m: int) -> int:
    """Exact number of M-types, C(M + |X| - 1, |X| - 1)."""
    return math.comb(m + alphabet_size - 1, alphabet_size - 1)


def enumerate_mtypes(alphabet_size: int, m: int) -> Iterator[MType]:
    """All M-types over an alphabet, by stars and bars."""
    for bars in itertools.combinations(range(m + alphabet_size - 1), alphabet_size - 1):
        edges = (-1,) + bars + (m + alphabet_size - 1,)
        yield MType(tuple(edges[i + 1] - edges[i] - 1 for i in range(alphabet_size)), m)


@lru_cache(maxsize=256)
def _bsc_capacity(q: float, alpha: float) -> float:
    return sibson_capacity(ChannelKernel.bsc(q), alpha)


def default_sim_eps(lambda1: float, lambda2: float) -> float:
    """0.9 (1 - lambda1 - lambda2) / 2, inside the admissible open interval."""
    return 0.9 * check_lambdas(lambda1, lambda2) / 2.0


def finite_n_sim_bound(n: int, p: float, alpha: float, eps: Optional[float] = None,
                       lambda1: float = 0.1, lambda2: float = 0.1) -> float:
    """
    log2 log2 of the simultaneous-code message bound, log2(n M).

    M = sufficient_m(alpha, eps, n * sibson_capacity(BSC_{p/2}, alpha)).

    Args:
        n: Block length
        p: Depolarizing parameter
        alpha: Order in (1, 2)
        eps: Covering target in (0, (1 - lambda1 - lambda2)/2); default 0.9 of the upper end
        lambda1: Type-I error level
        lambda2: Type-II error level

    Returns:
        log2(n) + log2(M); divided by n it tends to the Sibson capacity
    """
    if int(n) < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    p = check_probability(p, 'p')
    alpha = _check_open_alpha(alpha)
    gap = check_lambdas(lambda1, lambda2)
    eps = default_sim_eps(lambda1, lambda2) if eps is None else float(eps)
    if not 0.0 < eps < gap / 2.0:
        raise ParameterError(f"eps={eps} must lie in (0, {gap / 2.0:g})")
    capacity = _bsc_capacity(p / 2.0, alpha)
    m = sufficient_m(alpha, eps, n * capacity)
    return math.log2(n) + math.log2(m)


def _eigen_ensemble(rho: DensityMatrix) -> Tuple[np.ndarray, np.ndarray]:
    vals, vecs = np.linalg.eigh(np.asarray(rho.data))
    vals = np.clip(vals, 0.0, None)
    return vals / vals.sum(), vecs


def _check_low_rank_dim(rho: DensityMatrix) -> None:
    if rho.dim > MAX_LOW_RANK_DIM:
        raise DimensionError(f"low-rank covering supports dimension <= {MAX_LOW_RANK_DIM}, got {rho.dim}")


def _eigen_outputs(rho: DensityMatrix, p: float) -> Tuple[np.ndarray, List[DensityMatrix]]:
    probs, vecs = _eigen_ensemble(rho)
    outputs = [depolarize(DensityMatrix.from_pure(vecs[:, x]), p) for x in range(rho.dim)]
    return probs, outputs


def low_rank_sufficient_m(rho: DensityMatrix, p: float, eps: float = 0.1, alpha: float = 1.5) -> int:
    """
    Codebook size 2^(I - alpha/(alpha-1) log eps - 2) of the fixed-input covering lemma.

    I is the sandwiched alpha-MI of the ensemble {lambda_x, N_p(|e_x><e_x|)}
    built from the eigendecomposition of rho.
    """
    _check_low_rank_dim(rho)
    p = check_probability(p, 'p')
    probs, outputs = _eigen_outputs(rho, p)
    i_alpha = cq_sandwiched_mi(probs, outputs, _check_open_alpha(alpha))
    return sufficient_m(alpha, eps, i_alpha)


def low_rank_cover(rho: DensityMatrix, p: float, m: Optional[int] = None, eps: float = 0.1,
                   alpha: float = 1.5, draws: int = DEFAULT_DRAWS, seed: int = 0) -> LowRankCover:
    """
    Best sampled M-type state sigma_q = sum_x q(x) |e_x><e_x| for rho under N_p.

    Samples ``draws`` empirical types of M i.i.d. eigen-indices and keeps the
    one whose output is closest to N_p(rho) in trace distance.

    Args:
        rho: State of dimension at most 16
        p: Depolarizing parameter
        m: Type denominator; None uses low_rank_sufficient_m
        eps: Covering target used when m is None
        alpha: Order used when m is None
        draws: Number of sampled types
        seed: Generator seed

    Returns:
        LowRankCover(mtype, achieved_td)
    """
    _check_low_rank_dim(rho)
    p = check_probability(p, 'p')
    if draws < 1:
        raise ParameterError(f"draws must be >= 1, got {draws}")
    if m is None:
        m = low_rank_sufficient_m(rho, p, eps, alpha)
    if int(m) < 1:
        raise ParameterError(f"M must be >= 1, got {m}")
    probs, outputs = _eigen_outputs(rho, p)
    stacked = np.stack([np.asarray(out.data) for out in outputs])
    target = depolarize(rho, p)
    rng = make_rng(seed)

    best_counts, best_td = None, math.inf
    for _ in range(draws):
        counts = rng.multinomial(int(m), probs)
        candidate = np.tensordot(counts / int(m), stacked, axes=1)
        td = trace_distance(target, DensityMatrix(candidate, check=False))
        if td < best_td:
            best_counts, best_td = counts, td
        if best_td == 0.0:
            break
    logger.debug("low_rank_cover m=%d draws=%d best td=%.3g", m, draws, best_td)
    return LowRankCover(MType(tuple(best_counts), int(m)), best_td)


__all__ = [
    'SLACK_SE',
    'Codebook',
    'MType',
    'CoveringEstimate',
    'LowRankCover',
    'sample_codebook',
    'empirical_type',
    'induced_output',
    'covering_rhs',
    'sufficient_m',
    'monte_carlo_covering',
    'mtype_count_bound',
    'count_mtypes',
    'enumerate_mtypes',
    'default_sim_eps',
    'finite_n_sim_bound',
    'low_rank_sufficient_m',
    'low_rank_cover',
]
