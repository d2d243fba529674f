"""
PyIDCap Version Management Module

Version information for the PyIDCap library, following Semantic
Versioning (MAJOR.MINOR.PATCH).

License: MIT
"""

# Version information
__version__ = "0.1.0"
__version_info__ = tuple(int(i) for i in __version__.split("."))

# Package metadata
__title__ = "PyIDCap"
__description__ = "Strong converse bounds for identification over the qubit depolarizing channel"
__author__ = "PyIDCap developers"
__license__ = "MIT"

# Python version requirements
__python_requires__ = ">=3.9"

__python_versions__ = [
    "3.9",
    "3.10",
    "3.11",
    "3.12",
]

__status__ = "Alpha"

# Version of the JSON report layout written by the CLI
__schema_version__ = 1

__all__ = [
    "__version__",
    "__version_info__",
    "__title__",
    "__description__",
    "__author__",
    "__license__",
    "__python_requires__",
    "__python_versions__",
    "__status__",
    "__schema_version__",
    "get_version",
    "get_version_info",
    "print_version_info",
]


def get_version() -> str:
    """
    Get the current version of PyIDCap.

    Example:
        >>> from pyidcap._version import get_version
        >>> print(get_version())
        0.1.0
    """
    return __version__


def get_version_info() -> dict:
    """Get version and package metadata as a dictionary."""
    import numpy
    import scipy

    return {
        "version": __version__,
        "version_info": __version_info__,
        "title": __title__,
        "description": __description__,
        "author": __author__,
        "license": __license__,
        "python_requires": __python_requires__,
        "python_versions": __python_versions__,
        "status": __status__,
        "schema_version": __schema_version__,
        "numpy": numpy.__version__,
        "scipy": scipy.__version__,
    }


def print_version_info() -> None:
    """Print version information, including the numerical stack, to stdout."""
    info = get_version_info()
    print(f"{info['title']} v{info['version']}")
    print(f"Description : {info['description']}")
    print(f"License     : {info['license']}")
    print(f"Status      : {info['status']}")
    print(f"Python      : {info['python_requires']}")
    print(f"numpy       : {info['numpy']}")
    print(f"scipy       : {info['scipy']}")


if __name__ == "__main__":
    print_version_info()
