"""
PyIDCap Information Measures Module

Entropies and divergences used by the identification bounds: binary
entropy and relative entropy, classical Renyi divergence, Sibson
alpha-mutual information (closed form and the definitional infimum as an
oracle), capacities over the input simplex, and the sandwiched, Petz and
Umegaki divergences of density matrices.

All logarithms are base 2.

License: MIT
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np
from scipy import optimize
from scipy.special import entr, logsumexp, rel_entr

from pyidcap.channels import ChannelKernel, ProbDist
from pyidcap.errors import AlphabetError, DimensionError, ParameterError, ValidationError
from pyidcap.pauli_bloch import DensityMatrix
from pyidcap.utils import PROB_TOL, SUPPORT_TOL, check_probability, make_rng

logger = logging.getLogger(__name__)

LN2 = math.log(2.0)

MAX_ORACLE_OUTPUTS = 16
MAX_CAPACITY_INPUTS = 8
CAPACITY_STARTS = 17
CAPACITY_STEP = 0.1
CAPACITY_GRAD_TOL = 1e-10
CAPACITY_MAX_ITER = 20000
BINARY_GRID_POINTS = 1001

ProbLike = Union[ProbDist, Sequence[float], np.ndarray]


def _probs(values: ProbLike) -> np.ndarray:
    if isinstance(values, ProbDist):
        return values.probs
    return ProbDist(values).probs


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not alpha > 0 or alpha == 1.0 or not math.isfinite(alpha):
        raise ParameterError(f"alpha must be positive and != 1, got {alpha}")
    return alpha


def _check_compatible(px: np.ndarray, w: ChannelKernel) -> None:
    if px.size != w.input_size:
        raise DimensionError(f"input distribution size {px.size} does not match kernel {w.input_size}")


# ---------------------------------------------------------------------------
# Scalar entropies
# ---------------------------------------------------------------------------

def binary_entropy(q: float) -> float:
    """h(q) = -q log q - (1 - q) log(1 - q), with h(0) = h(1) = 0."""
    q = check_probability(q, 'q')
    return float((entr(q) + entr(1.0 - q)) / LN2)


def binary_rel_entropy(x: float, y: float) -> float:
    """
    Binary relative entropy D(x || y) in bits.

    Returns math.inf when y is 0 or 1 and x differs from it.

    Example:
        >>> binary_rel_entropy(0.0, 0.75)
        2.0
    """
    x = check_probability(x, 'x')
    y = check_probability(y, 'y')
    return float((rel_entr(x, y) + rel_entr(1.0 - x, 1.0 - y)) / LN2)


# ---------------------------------------------------------------------------
# Classical divergences
# ---------------------------------------------------------------------------

def kl_divergence(p: ProbLike, q: ProbLike) -> float:
    """Kullback-Leibler divergence D(p || q); inf when supp p is not in supp q."""
    p_arr, q_arr = _probs(p), _probs(q)
    if p_arr.size != q_arr.size:
        raise DimensionError(f"size mismatch: {p_arr.size} vs {q_arr.size}")
    return float(rel_entr(p_arr, q_arr).sum() / LN2)


def renyi_div(p: ProbLike, q: ProbLike, alpha: float) -> float:
    """
    Classical Renyi divergence (1/(alpha - 1)) log sum p^alpha q^(1 - alpha).

    Args:
        p: First distribution
        q: Second distribution
        alpha: Order, positive and different from 1

    Returns:
        The divergence in bits; math.inf for alpha > 1 when supp p is not
        contained in supp q, and for alpha < 1 when the supports are disjoint
    """
    alpha = _check_alpha(alpha)
    p_arr, q_arr = _probs(p), _probs(q)
    if p_arr.size != q_arr.size:
        raise DimensionError(f"size mismatch: {p_arr.size} vs {q_arr.size}")
    p_pos = p_arr > 0
    q_pos = q_arr > 0
    if alpha > 1 and np.any(p_pos & ~q_pos):
        return math.inf
    both = p_pos & q_pos
    if not np.any(both):
        return math.inf
    log_terms = alpha * np.log(p_arr[both]) + (1.0 - alpha) * np.log(q_arr[both])
    return float(logsumexp(log_terms) / ((alpha - 1.0) * LN2))


@dataclass(frozen=True, eq=False)
class JointDist:
    """Joint distribution P_XY stored as an |X| x |Y| matrix."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.matrix, dtype=float)
        if arr.ndim != 2:
            raise DimensionError(f"joint distribution must be a matrix, got shape {arr.shape}")
        if np.any(arr < 0):
            raise ValidationError("joint distribution has negative entries")
        if abs(arr.sum() - 1.0) > PROB_TOL:
            raise ValidationError(f"joint distribution sums to {arr.sum():.15g}")
        arr.setflags(write=False)
        object.__setattr__(self, 'matrix', arr)

    @classmethod
    def from_channel(cls, px: ProbLike, w: ChannelKernel) -> 'JointDist':
        p = _probs(px)
        _check_compatible(p, w)
        return cls(p[:, None] * w.rows)

    @property
    def marginal_x(self) -> ProbDist:
        return ProbDist(self.matrix.sum(axis=1))

    @property
    def marginal_y(self) -> ProbDist:
        return ProbDist(self.matrix.sum(axis=0))

    def product_of_marginals(self) -> np.ndarray:
        return np.outer(self.marginal_x.probs, self.marginal_y.probs)


def mutual_information(px: ProbLike, w: ChannelKernel) -> float:
    """Shannon mutual information I(X:Y) for input px through w."""
    joint = JointDist.from_channel(px, w)
    return kl_divergence(joint.matrix.ravel(), joint.product_of_marginals().ravel())


# ---------------------------------------------------------------------------
# Sibson alpha-mutual information
# ---------------------------------------------------------------------------

def _log_g(px: np.ndarray, w: ChannelKernel, alpha: float) -> np.ndarray:
    """ln g(y) with g(y) = sum_x P(x) W(y|x)^alpha; -inf where g vanishes."""
    with np.errstate(divide='ignore'):
        log_p = np.log(px)[:, None]
        log_w = np.log(w.rows)
    terms = np.where((px[:, None] > 0) & (w.rows > 0), log_p + alpha * log_w, -np.inf)
    return logsumexp(terms, axis=0)


def sibson_mi(px: ProbLike, w: ChannelKernel, alpha: float) -> float:
    """
    Sibson alpha-mutual information via the closed form.

    I_alpha(X:Y) = alpha/(alpha - 1) log sum_y (sum_x P(x) W(y|x)^alpha)^(1/alpha)

    Args:
        px: Input distribution
        w: Channel kernel
        alpha: Order (contract tested on (1, 2))

    Returns:
        The value in bits
    """
    alpha = _check_alpha(alpha)
    p = _probs(px)
    _check_compatible(p, w)
    log_g = _log_g(p, w, alpha)
    value = float(alpha / (alpha - 1.0) * logsumexp(log_g / alpha) / LN2)
    return max(value, 0.0) if value > -1e-13 else value


def sibson_optimal_output(px: ProbLike, w: ChannelKernel, alpha: float) -> ProbDist:
    """The minimizing Q_Y, proportional to g(y)^(1/alpha)."""
    alpha = _check_alpha(alpha)
    p = _probs(px)
    _check_compatible(p, w)
    log_q = _log_g(p, w, alpha) / alpha
    return ProbDist(np.exp(log_q - logsumexp(log_q)))


def sibson_mi_oracle(px: ProbLike, w: ChannelKernel, alpha: float) -> float:
    """
    Sibson alpha-MI from its definition inf_Q D_alpha(P_XY || P_X x Q).

    The infimum is taken numerically over Q on the support of g with a
    quasi-Newton method in softmax coordinates, and the divergence at the
    minimizer is evaluated with renyi_div.

    Raises:
        AlphabetError: more than 16 output symbols
    """
    alpha = _check_alpha(alpha)
    p = _probs(px)
    _check_compatible(p, w)
    if w.output_size > MAX_ORACLE_OUTPUTS:
        raise AlphabetError(f"oracle supports at most {MAX_ORACLE_OUTPUTS} outputs, got {w.output_size}")

    g = np.exp(_log_g(p, w, alpha))
    support = np.flatnonzero(g > 0)
    g_s = g[support]

    def objective(z: np.ndarray) -> Tuple[float, np.ndarray]:
        log_q = z - logsumexp(z)
        q = np.exp(log_q)
        weighted = g_s * np.exp((1.0 - alpha) * log_q)
        total = weighted.sum()
        value = math.log(total) / ((alpha - 1.0) * LN2)
        # d value / d q_y, then chained through the softmax Jacobian
        dq = -(weighted / q) / (total * LN2)
        grad = q * dq - q * np.dot(q, dq)
        return value, grad

    if support.size == 1:
        q_best = np.ones(1)
    else:
        result = optimize.minimize(objective, np.zeros(support.size), jac=True, method='BFGS',
                                   options={'gtol': 1e-13, 'maxiter': 10000})
        logger.debug("sibson_mi_oracle: %s after %d iterations", result.message, result.nit)
        q_best = np.exp(result.x - logsumexp(result.x))

    q_full = np.zeros(w.output_size)
    q_full[support] = q_best
    joint = p[:, None] * w.rows
    product = p[:, None] * q_full[None, :]
    return max(renyi_div(joint.ravel(), product.ravel(), alpha), 0.0)


def unit_simplex_projection(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex (sort-based)."""
    v = np.asarray(v, dtype=float)
    u = np.sort(v)[::-1]
    cssv = np.cumsum(u) - 1.0
    ind = np.arange(1, v.size + 1)
    cond = u - cssv / ind > 0
    rho = ind[cond][-1]
    tau = cssv[cond][-1] / rho
    return np.maximum(v - tau, 0.0)


def _sibson_gradient(p: np.ndarray, w: ChannelKernel, alpha: float) -> np.ndarray:
    g = np.maximum(p @ (w.rows ** alpha), 1e-30)
    total = np.sum(g ** (1.0 / alpha))
    return ((w.rows ** alpha) @ (g ** (1.0 / alpha - 1.0))) / ((alpha - 1.0) * LN2 * total)


def _projected_ascent(start: np.ndarray, w: ChannelKernel, alpha: float) -> Tuple[float, np.ndarray]:
    p = unit_simplex_projection(start)
    value = sibson_mi(p, w, alpha)
    for iteration in range(CAPACITY_MAX_ITER):
        grad = _sibson_gradient(p, w, alpha)
        step = CAPACITY_STEP
        while True:
            candidate = unit_simplex_projection(p + step * grad)
            cand_value = sibson_mi(candidate, w, alpha)
            if cand_value >= value or step < 1e-16:
                break
            step *= 0.5
        mapping_norm = float(np.linalg.norm(candidate - p)) / step
        gain = cand_value - value
        if gain >= 0:
            p, value = candidate, cand_value
        if mapping_norm <= CAPACITY_GRAD_TOL or step < 1e-16 or 0 <= gain < 1e-15:
            break
    logger.debug("projected ascent stopped after %d iterations at %.12g", iteration + 1, value)
    return value, p


def _capacity_search(w: ChannelKernel, alpha: float) -> Tuple[float, np.ndarray]:
    alpha = _check_alpha(alpha)
    k = w.input_size
    if k > MAX_CAPACITY_INPUTS:
        raise AlphabetError(f"capacity search supports at most {MAX_CAPACITY_INPUTS} inputs, got {k}")
    if k == 1:
        return 0.0, np.ones(1)

    starts: List[np.ndarray] = [np.full(k, 1.0 / k)]
    starts.extend(np.eye(k))
    rng = make_rng(0)
    while len(starts) < CAPACITY_STARTS:
        starts.append(rng.dirichlet(np.ones(k)))

    best_value, best_p = -math.inf, starts[0]
    for start in starts:
        value, p = _projected_ascent(start, w, alpha)
        if value > best_value:
            best_value, best_p = value, p

    if k == 2:
        grid = np.linspace(0.0, 1.0, BINARY_GRID_POINTS)
        values = [sibson_mi([t, 1.0 - t], w, alpha) for t in grid]
        idx = int(np.argmax(values))
        lo, hi = grid[max(idx - 1, 0)], grid[min(idx + 1, grid.size - 1)]
        refined = optimize.minimize_scalar(lambda t: -sibson_mi([t, 1.0 - t], w, alpha),
                                           bounds=(lo, hi), method='bounded',
                                           options={'xatol': 1e-12})
        for t, value in ((grid[idx], values[idx]), (float(refined.x), -float(refined.fun))):
            if value > best_value:
                best_value, best_p = value, np.array([t, 1.0 - t])

    return max(best_value, 0.0), best_p


def sibson_capacity(w: ChannelKernel, alpha: float) -> float:
    """
    sup over P_X of the Sibson alpha-MI of w.

    Multi-start projected gradient ascent on the simplex, plus a dense grid
    with bounded scalar refinement for binary inputs.

    Raises:
        AlphabetError: more than 8 input symbols
    """
    return _capacity_search(w, alpha)[0]


def sibson_capacity_achiever(w: ChannelKernel, alpha: float) -> ProbDist:
    """Input distribution attaining sibson_capacity."""
    return ProbDist(_capacity_search(w, alpha)[1])


def single_letter_check(w: ChannelKernel, alpha: float) -> Tuple[float, float]:
    """
    Compare the capacity of W x W with twice the capacity of W.

    Returns:
        (brute-force capacity of the two-fold product, 2 * sibson_capacity(w))
    """
    if w.input_size != 2:
        raise AlphabetError(f"single-letter check needs a binary-input kernel, got {w.input_size}")
    return sibson_capacity(w.tensor_power(2), alpha), 2.0 * sibson_capacity(w, alpha)


def shannon_capacity(w: ChannelKernel, tol: float = 1e-12, max_iter: int = 100000) -> float:
    """
    Shannon capacity by Blahut-Arimoto iteration.

    Stops when the upper and lower capacity estimates are within tol.
    """
    rows = w.rows
    p = np.full(w.input_size, 1.0 / w.input_size)
    lower = 0.0
    for _ in range(max_iter):
        out = p @ rows
        d = rel_entr(rows, out[None, :]).sum(axis=1)
        lower = float(logsumexp(d, b=p) / LN2)
        upper = float(d.max() / LN2)
        if upper - lower < tol:
            break
        p = p * np.exp(d - d.max())
        p /= p.sum()
    return max(lower, 0.0)


# ---------------------------------------------------------------------------
# Matrix divergences
# ---------------------------------------------------------------------------

def _eigh(rho: DensityMatrix) -> Tuple[np.ndarray, np.ndarray]:
    data = np.asarray(rho.data)
    vals, vecs = np.linalg.eigh(0.5 * (data + data.conj().T))
    return np.clip(vals, 0.0, None), vecs


def _support_power(vals: np.ndarray, vecs: np.ndarray, power: float) -> np.ndarray:
    """Matrix power restricted to the support (eigenvalues above SUPPORT_TOL)."""
    keep = vals > SUPPORT_TOL
    v = vecs[:, keep]
    return (v * vals[keep] ** power) @ v.conj().T


def _support_overlap(rho: DensityMatrix, sigma_vals: np.ndarray, sigma_vecs: np.ndarray) -> Tuple[float, float]:
    """(weight of rho inside supp sigma, weight outside)."""
    v = sigma_vecs[:, sigma_vals > SUPPORT_TOL]
    inside = float(np.real(np.trace(v.conj().T @ np.asarray(rho.data) @ v)))
    return inside, 1.0 - inside


def _check_pair(rho: DensityMatrix, sigma: DensityMatrix) -> None:
    if rho.dim != sigma.dim:
        raise DimensionError(f"dimension mismatch: {rho.dim} vs {sigma.dim}")


def _quantum_support_violation(rho: DensityMatrix, sigma_vals: np.ndarray,
                               sigma_vecs: np.ndarray, alpha: float) -> bool:
    inside, outside = _support_overlap(rho, sigma_vals, sigma_vecs)
    if alpha > 1:
        return outside > SUPPORT_TOL
    return inside <= SUPPORT_TOL


def sandwiched_renyi(rho: DensityMatrix, sigma: DensityMatrix, alpha: float) -> float:
    """
    Sandwiched Renyi divergence (1/(alpha-1)) log Tr(sigma^g rho sigma^g)^alpha, g = (1-alpha)/(2 alpha).

    Returns math.inf on a support violation.
    """
    alpha = _check_alpha(alpha)
    _check_pair(rho, sigma)
    s_vals, s_vecs = _eigh(sigma)
    if _quantum_support_violation(rho, s_vals, s_vecs, alpha):
        return math.inf
    sand = _support_power(s_vals, s_vecs, (1.0 - alpha) / (2.0 * alpha))
    inner = sand @ np.asarray(rho.data) @ sand
    m_vals = np.clip(np.linalg.eigvalsh(0.5 * (inner + inner.conj().T)), 0.0, None)
    q = float(np.sum(m_vals[m_vals > 0] ** alpha))
    if q <= 0:
        return math.inf
    return math.log2(q) / (alpha - 1.0)


def petz_renyi(rho: DensityMatrix, sigma: DensityMatrix, alpha: float) -> float:
    """Petz Renyi divergence (1/(alpha-1)) log Tr(rho^alpha sigma^(1-alpha))."""
    alpha = _check_alpha(alpha)
    _check_pair(rho, sigma)
    s_vals, s_vecs = _eigh(sigma)
    if _quantum_support_violation(rho, s_vals, s_vecs, alpha):
        return math.inf
    r_vals, r_vecs = _eigh(rho)
    q = float(np.real(np.trace(_support_power(r_vals, r_vecs, alpha)
                               @ _support_power(s_vals, s_vecs, 1.0 - alpha))))
    if q <= 0:
        return math.inf
    return math.log2(q) / (alpha - 1.0)


def umegaki_rel_entropy(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Umegaki relative entropy Tr rho (log rho - log sigma)."""
    _check_pair(rho, sigma)
    s_vals, s_vecs = _eigh(sigma)
    if _quantum_support_violation(rho, s_vals, s_vecs, 2.0):
        return math.inf
    r_vals, _ = _eigh(rho)
    keep = s_vals > SUPPORT_TOL
    weights = np.real(np.einsum('ij,ik,kj->j', s_vecs[:, keep].conj(), np.asarray(rho.data), s_vecs[:, keep]))
    neg_entropy = float(-entr(r_vals).sum())
    cross = float(np.dot(weights, np.log(s_vals[keep])))
    return max((neg_entropy - cross) / LN2, 0.0)


def _check_ensemble(probs: ProbLike, states: Sequence[DensityMatrix]) -> np.ndarray:
    p = _probs(probs)
    if p.size != len(states):
        raise DimensionError(f"{p.size} probabilities for {len(states)} states")
    dims = {s.dim for s in states}
    if len(dims) != 1:
        raise DimensionError(f"ensemble states have mixed dimensions {sorted(dims)}")
    return p


def cq_petz_mi(probs: ProbLike, states: Sequence[DensityMatrix], alpha: float) -> float:
    """
    Petz alpha-MI of a classical-quantum state in closed form.

    alpha/(alpha - 1) log Tr(sum_x p(x) rho_x^alpha)^(1/alpha)
    """
    alpha = _check_alpha(alpha)
    p = _check_ensemble(probs, states)
    mixed = sum(px * _support_power(*_eigh(rho), alpha) for px, rho in zip(p, states) if px > 0)
    vals = np.clip(np.linalg.eigvalsh(0.5 * (mixed + mixed.conj().T)), 0.0, None)
    return max(alpha / (alpha - 1.0) * math.log2(float(np.sum(vals ** (1.0 / alpha)))), 0.0)


def cq_sandwiched_mi(probs: ProbLike, states: Sequence[DensityMatrix], alpha: float,
                     maxiter: int = 200) -> float:
    """
    Sandwiched alpha-MI inf_sigma D~_alpha(rho_XB || rho_X x sigma) of a classical-quantum state.

    The infimum is searched numerically over sigma = A A^dagger / Tr(A A^dagger),
    starting from the Petz-optimal sigma; any sigma yields an upper bound, and
    the result never exceeds the value at that starting point.
    """
    alpha = _check_alpha(alpha)
    p = _check_ensemble(probs, states)
    d = states[0].dim
    gamma_exp = (1.0 - alpha) / (2.0 * alpha)
    blocks = [(px, np.asarray(rho.data)) for px, rho in zip(p, states) if px > 0]

    def value_at(sigma: np.ndarray) -> float:
        s_vals, s_vecs = np.linalg.eigh(0.5 * (sigma + sigma.conj().T))
        s_vals = np.clip(s_vals, 0.0, None)
        total = 0.0
        for px, rho in blocks:
            outside = 1.0 - float(np.real(np.trace(
                s_vecs[:, s_vals > SUPPORT_TOL].conj().T @ rho @ s_vecs[:, s_vals > SUPPORT_TOL])))
            if alpha > 1 and outside > SUPPORT_TOL:
                return math.inf
            sand = _support_power(s_vals, s_vecs, gamma_exp)
            inner = sand @ rho @ sand
            m_vals = np.clip(np.linalg.eigvalsh(0.5 * (inner + inner.conj().T)), 0.0, None)
            total += px * float(np.sum(m_vals ** alpha))
        return math.log2(total) / (alpha - 1.0) if total > 0 else math.inf

    mixed = sum(px * _support_power(*_eigh(rho), alpha) for px, rho in zip(p, states) if px > 0)
    m_vals, m_vecs = np.linalg.eigh(0.5 * (mixed + mixed.conj().T))
    m_vals = np.clip(m_vals, 0.0, None)
    start_sigma = _support_power(m_vals, m_vecs, 1.0 / alpha)
    start_sigma = start_sigma / np.trace(start_sigma).real
    best = value_at(start_sigma)

    def objective(x: np.ndarray) -> float:
        a = (x[:d * d] + 1j * x[d * d:]).reshape(d, d)
        sigma = a @ a.conj().T
        return value_at(sigma / np.trace(sigma).real)

    # sqrt of the start point; eigenvectors are shared with the mixture
    root = (m_vecs * np.sqrt(m_vals ** (1.0 / alpha) / np.sum(m_vals ** (1.0 / alpha)))) @ m_vecs.conj().T
    x0 = np.concatenate([root.real.ravel(), root.imag.ravel()])
    result = optimize.minimize(objective, x0, method='L-BFGS-B', options={'maxiter': maxiter})
    if np.isfinite(result.fun) and result.fun < best:
        best = float(result.fun)
    logger.debug("cq_sandwiched_mi: start %.9g, optimized %.9g", value_at(start_sigma), best)
    return max(best, 0.0)


__all__ = [
    'binary_entropy',
    'binary_rel_entropy',
    'kl_divergence',
    'renyi_div',
    'JointDist',
    'mutual_information',
    'sibson_mi',
    'sibson_optimal_output',
    'sibson_mi_oracle',
    'unit_simplex_projection',
    'sibson_capacity',
    'sibson_capacity_achiever',
    'single_letter_check',
    'shannon_capacity',
    'sandwiched_renyi',
    'petz_renyi',
    'umegaki_rel_entropy',
    'cq_petz_mi',
    'cq_sandwiched_mi',
]
