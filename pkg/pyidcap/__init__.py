"""
PyIDCap - Identification Capacity Bounds for the Qubit Depolarizing Channel

PyIDCap computes strong converse upper bounds on the identification
capacity of the qubit depolarizing channel: the simultaneous bound built
on soft covering of BSC_{p/2}, the unrestricted bound built on covering
the Bloch ellipsoid, and the general dimension-based bound. It also
ships the quantum and classical information measures those bounds rest
on, and numerical checks of every reduction they use.

Quick Start:
    >>> import pyidcap
    >>>
    >>> # Asymptotic bounds at p = 0.9
    >>> pyidcap.simultaneous_capacity_product(0.9)
    >>> pyidcap.asymptotic_unrestricted_bound(0.9)
    >>>
    >>> # Finite block-length bound next to its limit
    >>> pyidcap.finite_n_unrestricted_bound(200, 0.9)
    >>>
    >>> # Depolarize a random 2-qubit state
    >>> rng = pyidcap.make_rng(7)
    >>> rho = pyidcap.random_state(2, rng)
    >>> sigma = pyidcap.depolarize(rho, 0.3)
    >>>
    >>> # Full bound curves over a p-grid
    >>> curve = pyidcap.sweep_curves([0.5, 0.7, 0.9])
    >>> curve.crossing_p

Main Modules:
    - pauli_bloch: density matrices, Pauli strings and Bloch vectors
    - channels: depolarizing channel, BSC and product measurements
    - info_measures: entropies, Renyi divergences and Sibson information
    - soft_covering: codebooks and the soft-covering lemma
    - covering_geometry: ellipsoid covering and the unrestricted bound
    - bounds_api: identification codes and the bound catalogue

License: MIT
"""

# Version information
from pyidcap._version import (
    __version__,
    __version_info__,
    __title__,
    __description__,
    __author__,
    __license__,
    __status__,
    get_version,
    get_version_info,
    print_version_info,
)

from pyidcap.errors import (
    IdcapError,
    DimensionError,
    ValidationError,
    ParameterError,
    AlphabetError,
    ConfigError,
)

from pyidcap.pauli_bloch import (
    DensityMatrix,
    PauliString,
    BlochVector,
    pauli_expand,
    bloch_to_state,
    hs_distance,
    trace_distance,
    random_state,
    random_pure_state,
)

from pyidcap.channels import (
    ProbDist,
    ChannelKernel,
    ProductBasis,
    depolarize,
    depolarize_bloch,
    dephase,
    measure_product,
    bsc_apply,
    reduction_check,
)

from pyidcap.info_measures import (
    binary_entropy,
    binary_rel_entropy,
    kl_divergence,
    renyi_div,
    mutual_information,
    sibson_mi,
    sibson_mi_oracle,
    sibson_capacity,
    shannon_capacity,
    sandwiched_renyi,
    petz_renyi,
    umegaki_rel_entropy,
    cq_petz_mi,
    cq_sandwiched_mi,
)

from pyidcap.soft_covering import (
    Codebook,
    MType,
    sample_codebook,
    empirical_type,
    induced_output,
    covering_rhs,
    sufficient_m,
    monte_carlo_covering,
    mtype_count_bound,
    finite_n_sim_bound,
    low_rank_cover,
)

from pyidcap.covering_geometry import (
    BREAKPOINT_P,
    EllipsoidSpec,
    depolarizing_ellipsoid,
    dumer_bound,
    mu_theta,
    weight_count_log2,
    chernoff_tail,
    finite_n_unrestricted_bound,
    asymptotic_unrestricted_bound,
)

from pyidcap.bounds_api import (
    IdCode,
    IdErrors,
    verify_id_code,
    simultaneous_capacity_product,
    general_bound_depolarizing,
    general_finite_n_bound,
    find_crossing,
    CurveParams,
    BoundCurve,
    sweep_curves,
)

# Utilities (advanced users)
from pyidcap.utils import make_rng, trial_seeds, tv_distance

__all__ = [
    # Version
    '__version__',
    '__version_info__',
    '__title__',
    '__description__',
    '__author__',
    '__license__',
    '__status__',
    'get_version',
    'get_version_info',
    'print_version_info',
    # Errors
    'IdcapError',
    'DimensionError',
    'ValidationError',
    'ParameterError',
    'AlphabetError',
    'ConfigError',
    # States
    'DensityMatrix',
    'PauliString',
    'BlochVector',
    'pauli_expand',
    'bloch_to_state',
    'hs_distance',
    'trace_distance',
    'random_state',
    'random_pure_state',
    # Channels
    'ProbDist',
    'ChannelKernel',
    'ProductBasis',
    'depolarize',
    'depolarize_bloch',
    'dephase',
    'measure_product',
    'bsc_apply',
    'reduction_check',
    # Information measures
    'binary_entropy',
    'binary_rel_entropy',
    'kl_divergence',
    'renyi_div',
    'mutual_information',
    'sibson_mi',
    'sibson_mi_oracle',
    'sibson_capacity',
    'shannon_capacity',
    'sandwiched_renyi',
    'petz_renyi',
    'umegaki_rel_entropy',
    'cq_petz_mi',
    'cq_sandwiched_mi',
    # Soft covering
    'Codebook',
    'MType',
    'sample_codebook',
    'empirical_type',
    'induced_output',
    'covering_rhs',
    'sufficient_m',
    'monte_carlo_covering',
    'mtype_count_bound',
    'finite_n_sim_bound',
    'low_rank_cover',
    # Covering geometry
    'BREAKPOINT_P',
    'EllipsoidSpec',
    'depolarizing_ellipsoid',
    'dumer_bound',
    'mu_theta',
    'weight_count_log2',
    'chernoff_tail',
    'finite_n_unrestricted_bound',
    'asymptotic_unrestricted_bound',
    # Bounds
    'IdCode',
    'IdErrors',
    'verify_id_code',
    'simultaneous_capacity_product',
    'general_bound_depolarizing',
    'general_finite_n_bound',
    'find_crossing',
    'CurveParams',
    'BoundCurve',
    'sweep_curves',
    # Utilities
    'make_rng',
    'trial_seeds',
    'tv_distance',
]
