"""
PyIDCap Error Mapping Module

Maps every exception the CLI can meet to a plain-language explanation, a
fix suggestion, tags and the process exit code.

Exit codes: 0 success, 1 claim violation (not an exception), 2 usage or
parameter error, 3 I/O error.

License: MIT
"""

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_IO = 3

ERROR_MAPPINGS = {
    "ParameterError": {
        "simple_explanation": "A numeric parameter is outside the range the computation accepts.",
        "fix_suggestion": "Check p in [0, 1], alpha in (1, 2), theta in (0, 1/2), eps in (0, 1) "
                          "and lambda1 + lambda2 < 1.",
        "tags": ["parameter", "range"],
        "exit_code": EXIT_USAGE,
    },
    "ConfigError": {
        "simple_explanation": "The config file or an environment setting could not be read as parameters.",
        "fix_suggestion": "Use one 'key = value' per line with known keys, and an integer >= 0 for IDCAP_THREADS.",
        "tags": ["config", "parameter"],
        "exit_code": EXIT_USAGE,
    },
    "DimensionError": {
        "simple_explanation": "A size is not a power of two, sizes disagree, or the problem is beyond desk scale.",
        "fix_suggestion": "Reduce n (dense checks stop at a few qubits) or make the inputs agree in size.",
        "tags": ["dimension", "size"],
        "exit_code": EXIT_USAGE,
    },
    "AlphabetError": {
        "simple_explanation": "An alphabet is too large for the brute-force search or has the wrong structure.",
        "fix_suggestion": "Use at most 8 inputs for capacity searches and 16 outputs for the Sibson oracle.",
        "tags": ["dimension", "alphabet"],
        "exit_code": EXIT_USAGE,
    },
    "ValidationError": {
        "simple_explanation": "An input is not a valid state, distribution, kernel or decoder.",
        "fix_suggestion": "Check Hermiticity, positivity, normalization and that decoders lie between 0 and I.",
        "tags": ["validation"],
        "exit_code": EXIT_USAGE,
    },
    "OSError": {
        "simple_explanation": "A file could not be read or written.",
        "fix_suggestion": "Check that the config path exists and that the --out directory is writable.",
        "tags": ["io", "file"],
        "exit_code": EXIT_IO,
    },
    "__unknown__": {
        "simple_explanation": "An unexpected error occurred.",
        "fix_suggestion": "Re-run with -vv for debug logging.",
        "tags": ["unknown"],
        "exit_code": EXIT_USAGE,
    },
}

# OSError subclasses share the I/O mapping
for _name in ("FileNotFoundError", "PermissionError", "IsADirectoryError", "NotADirectoryError"):
    ERROR_MAPPINGS[_name] = dict(ERROR_MAPPINGS["OSError"])


def get_error_mapping(error_type: str) -> dict:
    """Get the explanation mapping for an exception class name."""
    return ERROR_MAPPINGS.get(error_type, ERROR_MAPPINGS["__unknown__"])


def exit_code_for(exc: BaseException) -> int:
    """Exit code of an exception, walking its class hierarchy until a mapping is found."""
    for cls in type(exc).__mro__:
        if cls.__name__ in ERROR_MAPPINGS:
            return ERROR_MAPPINGS[cls.__name__]["exit_code"]
    return ERROR_MAPPINGS["__unknown__"]["exit_code"]


__all__ = [
    "EXIT_OK",
    "EXIT_VIOLATION",
    "EXIT_USAGE",
    "EXIT_IO",
    "ERROR_MAPPINGS",
    "get_error_mapping",
    "exit_code_for",
]
