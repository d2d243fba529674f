"""
PyIDCap Configuration Module

RunConfig is the parameter record behind every CLI subcommand. Values come
from three layers, later layers winning: built-in defaults (global and per
command), an optional flat ``key = value`` config file, and explicit
command-line flags.

License: MIT
"""

import dataclasses
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple, Union

from pyidcap.errors import ConfigError, ParameterError
from pyidcap.utils import parse_grid, parse_int_list

logger = logging.getLogger(__name__)

THREADS_ENV = 'IDCAP_THREADS'
COMMANDS = ('bounds', 'verify-reduction', 'soft-cover', 'finite-n')
FORMATS = ('csv', 'json')
SOURCES = ('uniform', 'point')
MAX_REDUCTION_QUBITS = 5

COMMAND_DEFAULTS: Dict[str, Dict[str, Any]] = {
    'bounds': {'p_grid': '0:0.99:0.01'},
    'verify-reduction': {'n': 3, 'p': 0.5, 'trials': 100},
    'soft-cover': {'n': 6, 'p': 0.5, 'eps': 0.1, 'trials': 200},
    'finite-n': {'p': 0.9, 'n_list': '50,100,200,400'},
}

# Spellings accepted in config files besides the field names
KEY_ALIASES = {
    'format': 'fmt',
    'lambda_1': 'lambda1',
    'lambda_2': 'lambda2',
    'ns': 'n_list',
    'grid': 'p_grid',
}


@dataclass(frozen=True)
class RunConfig:
    """Parameters of one CLI run; ``seed`` is always present."""

    command: str
    p: Optional[float] = None
    p_grid: Optional[str] = None
    n: Optional[int] = None
    n_list: Optional[str] = None
    alpha: float = 1.5
    alphas: Tuple[float, ...] = (1.25, 1.5, 1.75)
    eps: Optional[float] = None
    theta: float = 0.25
    thetas: Optional[str] = None
    lambda1: float = 0.1
    lambda2: float = 0.1
    m: Optional[int] = None
    trials: Optional[int] = None
    seed: int = 0
    out: Optional[str] = None
    fmt: str = 'csv'
    finite_n: Optional[int] = None
    threads: Optional[int] = None
    draws: int = 1000
    source: str = 'uniform'

    def validate(self) -> 'RunConfig':
        """Raise ParameterError when a value violates its operation's precondition."""
        if self.command not in COMMANDS:
            raise ParameterError(f"unknown command '{self.command}'")
        if self.fmt not in FORMATS:
            raise ParameterError(f"format must be one of {FORMATS}, got '{self.fmt}'")
        if self.source not in SOURCES:
            raise ParameterError(f"source must be one of {SOURCES}, got '{self.source}'")
        if self.seed < 0:
            raise ParameterError(f"seed must be non-negative, got {self.seed}")
        if self.p is not None and not 0.0 <= self.p <= 1.0:
            raise ParameterError(f"p={self.p} outside [0, 1]")
        if not 0.0 < self.theta < 0.5:
            raise ParameterError(f"theta={self.theta} outside (0, 1/2)")
        if self.lambda1 < 0 or self.lambda2 < 0 or self.lambda1 + self.lambda2 >= 1.0:
            raise ParameterError(f"need lambda1, lambda2 >= 0 with sum < 1, got {self.lambda1}, {self.lambda2}")
        for a in (self.alpha,) + tuple(self.alphas):
            if not 1.0 < a < 2.0:
                raise ParameterError(f"alpha={a} outside (1, 2)")
        if self.eps is not None and not 0.0 < self.eps < 1.0:
            raise ParameterError(f"eps={self.eps} outside (0, 1)")
        for name in ('n', 'm', 'finite_n', 'trials', 'draws'):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ParameterError(f"{name} must be >= 1, got {value}")
        if self.threads is not None and self.threads < 0:
            raise ParameterError(f"threads must be >= 0, got {self.threads}")
        if self.command == 'verify-reduction' and self.n is not None and self.n > MAX_REDUCTION_QUBITS:
            raise ParameterError(f"verify-reduction supports n <= {MAX_REDUCTION_QUBITS}, got {self.n}")
        if self.command == 'finite-n' and self.p is not None and self.p >= 1.0:
            raise ParameterError("finite-n needs p < 1")
        if self.p_grid is not None:
            parse_grid(self.p_grid)
        if self.n_list is not None:
            parse_int_list(self.n_list)
        if self.thetas is not None:
            for t in parse_grid(self.thetas):
                if not 0.0 < t < 0.5:
                    raise ParameterError(f"theta={t} outside (0, 1/2)")
        return self

    def with_updates(self, **changes: Any) -> 'RunConfig':
        return dataclasses.replace(self, **changes)

    def as_dict(self) -> Dict[str, Any]:
        return dataclasses.asdict(self)


FIELD_TYPES = {f.name: f.type for f in dataclasses.fields(RunConfig)}
INT_FIELDS = {'n', 'm', 'trials', 'seed', 'finite_n', 'threads', 'draws'}
FLOAT_FIELDS = {'p', 'alpha', 'eps', 'theta', 'lambda1', 'lambda2'}


def _coerce(key: str, raw: Any) -> Any:
    """Convert a raw value (string from a file, or a flag value) to the field's type."""
    if raw is None:
        return None
    try:
        if key == 'alphas':
            if isinstance(raw, str):
                return tuple(float(x) for x in raw.split(',') if x.strip())
            return tuple(float(x) for x in raw)
        if key in INT_FIELDS:
            return int(raw)
        if key in FLOAT_FIELDS:
            return float(raw)
        return str(raw).strip()
    except (TypeError, ValueError):
        raise ConfigError(f"invalid value {raw!r} for '{key}'") from None


def normalize_key(key: str) -> str:
    key = key.strip().lower().lstrip('-').replace('-', '_')
    return KEY_ALIASES.get(key, key)


def load_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """
    Read a flat ``key = value`` file.

    Blank lines and ``#`` comments are ignored; keys may use flag spelling
    (``p-grid``) or field spelling (``p_grid``).

    Raises:
        ConfigError: malformed line or unknown key
        OSError: the file cannot be read
    """
    values: Dict[str, Any] = {}
    text = Path(path).read_text(encoding='utf-8')
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got '{line}'")
        key, raw = line.split('=', 1)
        key = normalize_key(key)
        if key not in FIELD_TYPES or key == 'command':
            raise ConfigError(f"{path}:{lineno}: unknown key '{key}'")
        values[key] = _coerce(key, raw.strip())
    logger.debug("loaded %d keys from %s", len(values), path)
    return values


def env_threads(environ: Optional[Mapping[str, str]] = None) -> int:
    """Thread cap from IDCAP_THREADS; unset or 0 means one worker per CPU."""
    environ = os.environ if environ is None else environ
    raw = environ.get(THREADS_ENV, '').strip()
    if not raw:
        return 0
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{THREADS_ENV}={raw!r} is not an integer") from None
    if value < 0:
        raise ConfigError(f"{THREADS_ENV}={value} must be >= 0")
    return value


def build_config(command: str, flags: Optional[Mapping[str, Any]] = None,
                 config_path: Optional[Union[str, Path]] = None,
                 environ: Optional[Mapping[str, str]] = None) -> RunConfig:
    """
    Merge defaults, config file and explicit flags into a validated RunConfig.

    Args:
        command: Subcommand name
        flags: Values given on the command line; None entries are ignored
        config_path: Optional config file
        environ: Environment used for IDCAP_THREADS (defaults to os.environ)

    Returns:
        Validated RunConfig
    """
    if command not in COMMANDS:
        raise ParameterError(f"unknown command '{command}'")
    merged: Dict[str, Any] = dict(COMMAND_DEFAULTS[command])
    if config_path is not None:
        merged.update(load_config_file(config_path))
    for key, value in (flags or {}).items():
        if value is None:
            continue
        key = normalize_key(key)
        if key not in FIELD_TYPES or key == 'command':
            raise ConfigError(f"unknown option '{key}'")
        merged[key] = _coerce(key, value)
    if merged.get('threads') is None:
        merged['threads'] = env_threads(environ)
    return RunConfig(command=command, **merged).validate()


__all__ = [
    'THREADS_ENV',
    'COMMANDS',
    'COMMAND_DEFAULTS',
    'RunConfig',
    'normalize_key',
    'load_config_file',
    'env_threads',
    'build_config',
]
