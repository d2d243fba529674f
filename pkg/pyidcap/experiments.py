"""
PyIDCap Experiments Module

Drivers behind the CLI subcommands. Each driver takes a validated
RunConfig and returns an ExperimentResult holding the tabular rows, the
JSON report and the exit code (0 when every checked claim holds, 1 on a
claim violation). Rendering is deterministic: no timestamps, sorted keys
and 9 significant digits, so a fixed seed reproduces identical bytes.

License: MIT
"""

import csv
import io
import json
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence

from pyidcap._version import __version__
from pyidcap.bounds_api import CurveParams, simultaneous_capacity_product, sweep_curves
from pyidcap.channels import ChannelKernel, ProbDist, ProductBasis, reduction_check
from pyidcap.config import RunConfig
from pyidcap.covering_geometry import asymptotic_unrestricted_bound, finite_n_unrestricted_bound
from pyidcap.errors import ParameterError
from pyidcap.info_measures import sibson_mi
from pyidcap.pauli_bloch import random_state
from pyidcap.soft_covering import (
    SLACK_SE,
    covering_rhs,
    default_sim_eps,
    finite_n_sim_bound,
    monte_carlo_covering,
    sufficient_m,
)
from pyidcap.utils import (
    REDUCTION_TOL,
    format_float,
    make_rng,
    parallel_map,
    parse_grid,
    parse_int_list,
    round_sig,
    trial_seeds,
)

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
MAX_SOFT_COVER_QUBITS = 10

BOUNDS_HEADER = ('p', 'sim_cap', 'unrestricted_bound', 'general_bound', 'finite_n_bound')
REDUCTION_HEADER = ('trial', 'seed', 'tv')
SOFT_COVER_HEADER = ('seed', 'n', 'p', 'alpha', 'm', 'trials', 'mean_tv', 'std_err', 'bound_rhs')
FINITE_N_HEADER = (
    'theta', 'n', 'unrestricted_exact', 'unrestricted_chernoff', 'unrestricted_asymptotic',
    'simultaneous_finite_n', 'simultaneous_asymptotic',
)


@dataclass
class ExperimentResult:
    """Output of one driver: table, JSON report, human summary and exit code."""

    command: str
    header: Sequence[str]
    rows: List[Dict[str, Any]]
    report: Dict[str, Any]
    summary: str = ''
    exit_code: int = 0


def _report(command: str, cfg: RunConfig, **body: Any) -> Dict[str, Any]:
    report = {'schema_version': SCHEMA_VERSION, 'command': command, 'version': __version__, 'seed': cfg.seed}
    report.update(body)
    return report


def run_bounds(cfg: RunConfig) -> ExperimentResult:
    """Sweep the bound catalogue over the configured p-grid."""
    params = CurveParams(cfg.lambda1, cfg.lambda2, cfg.theta, cfg.alpha, cfg.finite_n, cfg.threads)
    curve = sweep_curves(parse_grid(cfg.p_grid), params)
    rows = [{
        'p': pt.p,
        'sim_cap': pt.sim_cap,
        'unrestricted_bound': pt.unrestricted_bound,
        'general_bound': pt.general_bound,
        'finite_n_bound': pt.finite_n_bound,
    } for pt in curve.points]
    report = _report('bounds', cfg, metadata=curve.metadata(), rows=rows)
    summary = f"crossing of unrestricted bounds at p = {curve.crossing_p:.6f}"
    return ExperimentResult('bounds', BOUNDS_HEADER, rows, report, summary)


def _reduction_trial(n: int, p: float, trial_seed: int) -> float:
    rng = make_rng(trial_seed)
    rho = random_state(n, rng)
    basis = ProductBasis.random(n, rng)
    return reduction_check(rho, basis, p)


def run_reduction(cfg: RunConfig) -> ExperimentResult:
    """Check the BSC reduction on random (state, product basis) pairs."""
    seeds = trial_seeds(cfg.seed, cfg.trials)
    gaps = parallel_map(lambda s: _reduction_trial(cfg.n, cfg.p, s), seeds, cfg.threads)
    rows = [{'trial': i, 'seed': s, 'tv': tv} for i, (s, tv) in enumerate(zip(seeds, gaps))]
    max_tv = max(gaps) if gaps else 0.0
    offending = [row['seed'] for row in rows if row['tv'] > REDUCTION_TOL]
    passed = not offending
    report = _report('verify-reduction', cfg, n=cfg.n, p=cfg.p, trials=cfg.trials, max_tv=max_tv,
                     tolerance=REDUCTION_TOL, passed=passed,
                     offending_seed=offending[0] if offending else None)
    if passed:
        summary = f"reduction holds on {cfg.trials} trials: max TV = {format_float(max_tv)}"
    else:
        summary = f"reduction violated: max TV = {format_float(max_tv)}, offending seed {offending[0]}"
        logger.warning("reduction violated for %d trials, first seed %d", len(offending), offending[0])
    return ExperimentResult('verify-reduction', REDUCTION_HEADER, rows, report, summary, 0 if passed else 1)


def run_soft_cover(cfg: RunConfig) -> ExperimentResult:
    """Monte Carlo soft covering for BSC_{p/2}^{(x) n}, one record per alpha."""
    if cfg.n > MAX_SOFT_COVER_QUBITS:
        raise ParameterError(f"soft-cover supports n <= {MAX_SOFT_COVER_QUBITS}, got {cfg.n}")
    if cfg.trials < 30:
        raise ParameterError(f"soft-cover needs at least 30 trials, got {cfg.trials}")
    kernel = ChannelKernel.bsc(cfg.p / 2.0).tensor_power(cfg.n)
    k = kernel.input_size
    px = ProbDist.uniform(k) if cfg.source == 'uniform' else ProbDist.point_mass(k)

    rows, passed = [], True
    for alpha in cfg.alphas:
        i_alpha = sibson_mi(px, kernel, alpha)
        m = cfg.m if cfg.m is not None else sufficient_m(alpha, cfg.eps, i_alpha)
        estimate = monte_carlo_covering(px, kernel, m, cfg.trials, cfg.seed, cfg.threads)
        rhs = covering_rhs(alpha, i_alpha, m)
        ok = estimate.mean_tv <= rhs + SLACK_SE * estimate.std_err
        passed = passed and ok
        if not ok:
            logger.warning("covering bound exceeded at alpha=%g: mean %.6g > %.6g + %g SE",
                           alpha, estimate.mean_tv, rhs, SLACK_SE)
        rows.append({
            'seed': cfg.seed, 'n': cfg.n, 'p': cfg.p, 'alpha': alpha, 'm': m, 'trials': cfg.trials,
            'mean_tv': estimate.mean_tv, 'std_err': estimate.std_err, 'bound_rhs': rhs,
        })
    report = _report('soft-cover', cfg, eps=cfg.eps, source=cfg.source, slack_se=SLACK_SE,
                     passed=passed, records=rows)
    summary = ("soft covering bound holds" if passed else "soft covering bound violated") + \
        f" for alpha in {list(cfg.alphas)}"
    return ExperimentResult('soft-cover', SOFT_COVER_HEADER, rows, report, summary, 0 if passed else 1)


def run_finite_n(cfg: RunConfig) -> ExperimentResult:
    """Finite-n unrestricted and simultaneous bounds next to their limits."""
    ns = parse_int_list(cfg.n_list)
    thetas = parse_grid(cfg.thetas) if cfg.thetas else [cfg.theta]
    eps = cfg.eps if cfg.eps is not None else default_sim_eps(cfg.lambda1, cfg.lambda2)
    asymptotic = asymptotic_unrestricted_bound(cfg.p)
    sim_limit = simultaneous_capacity_product(cfg.p)
    sim_values = {n: finite_n_sim_bound(n, cfg.p, cfg.alpha, eps, cfg.lambda1, cfg.lambda2) / n for n in ns}

    rows = []
    for theta in thetas:
        for n in ns:
            rows.append({
                'theta': theta,
                'n': n,
                'unrestricted_exact': finite_n_unrestricted_bound(n, cfg.p, cfg.lambda1, cfg.lambda2, theta),
                'unrestricted_chernoff': finite_n_unrestricted_bound(n, cfg.p, cfg.lambda1, cfg.lambda2,
                                                                     theta, method='chernoff'),
                'unrestricted_asymptotic': asymptotic,
                'simultaneous_finite_n': sim_values[n],
                'simultaneous_asymptotic': sim_limit,
            })
    report = _report('finite-n', cfg, p=cfg.p, alpha=cfg.alpha, eps=eps, lambda1=cfg.lambda1,
                     lambda2=cfg.lambda2, rows=rows)
    summary = f"asymptotic unrestricted bound {format_float(asymptotic)}, simultaneous {format_float(sim_limit)}"
    return ExperimentResult('finite-n', FINITE_N_HEADER, rows, report, summary)


DRIVERS = {
    'bounds': run_bounds,
    'verify-reduction': run_reduction,
    'soft-cover': run_soft_cover,
    'finite-n': run_finite_n,
}


def run_experiment(cfg: RunConfig) -> ExperimentResult:
    return DRIVERS[cfg.command](cfg)


def _cell(value: Any) -> str:
    if value is None:
        return ''
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def render_csv(result: ExperimentResult) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(result.header)
    for row in result.rows:
        writer.writerow([_cell(row.get(col)) for col in result.header])
    return buffer.getvalue()


def _rounded(obj: Any) -> Any:
    if isinstance(obj, float):
        value = round_sig(obj)
        return value if math.isfinite(value) else None
    if isinstance(obj, dict):
        return {k: _rounded(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_rounded(v) for v in obj]
    return obj


def render_json(result: ExperimentResult) -> str:
    return json.dumps(_rounded(result.report), sort_keys=True, indent=2, allow_nan=False) + '\n'


def render(result: ExperimentResult, fmt: str) -> str:
    """Serialize a result as 'csv' or 'json'."""
    if fmt == 'csv':
        return render_csv(result)
    if fmt == 'json':
        return render_json(result)
    raise ParameterError(f"unknown format '{fmt}'")


__all__ = [
    'SCHEMA_VERSION',
    'BOUNDS_HEADER',
    'ExperimentResult',
    'run_bounds',
    'run_reduction',
    'run_soft_cover',
    'run_finite_n',
    'run_experiment',
    'render_csv',
    'render_json',
    'render',
]
