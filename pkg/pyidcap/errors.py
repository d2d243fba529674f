"""
PyIDCap Exceptions Module

Exception hierarchy shared by every numerical module. All library errors
derive from IdcapError, which itself is a ValueError so callers that only
guard against bad values keep working.

License: MIT
"""


class IdcapError(ValueError):
    """Base class for all PyIDCap errors."""


class DimensionError(IdcapError):
    """A dimension is not a power of two, sizes disagree, or a size is beyond desk scale."""


class ValidationError(IdcapError):
    """A value violates a type invariant (Hermiticity, positivity, normalization, ...)."""


class ParameterError(IdcapError):
    """A scalar parameter is outside the precondition of the operation."""


class AlphabetError(DimensionError):
    """An alphabet is too large for an oracle or has the wrong structure."""


class ConfigError(ParameterError):
    """A config file or environment setting could not be parsed."""


__all__ = [
    'IdcapError',
    'DimensionError',
    'ValidationError',
    'ParameterError',
    'AlphabetError',
    'ConfigError',
]
