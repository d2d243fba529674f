"""
Error Mapping Tests for PyIDCap

License: MIT
"""

import pytest

from pyidcap.errors import (
    AlphabetError,
    ConfigError,
    DimensionError,
    IdcapError,
    ParameterError,
    ValidationError,
)
from pyidcap.mapping import (
    ERROR_MAPPINGS,
    EXIT_IO,
    EXIT_USAGE,
    exit_code_for,
    get_error_mapping,
)


class TestErrorMappings:
    """Tests for error mappings completeness and structure."""

    def test_all_mappings_have_required_fields(self):
        """Test that all mappings have required fields."""
        required_fields = ['simple_explanation', 'fix_suggestion', 'tags', 'exit_code']

        for error_type, mapping in ERROR_MAPPINGS.items():
            for field in required_fields:
                assert field in mapping, f"{error_type} missing {field}"

    def test_all_explanations_not_empty(self):
        for error_type, mapping in ERROR_MAPPINGS.items():
            assert len(mapping['simple_explanation']) > 10
            assert len(mapping['fix_suggestion']) > 10

    def test_package_errors_present(self):
        for error in ('ParameterError', 'ConfigError', 'DimensionError', 'AlphabetError', 'ValidationError'):
            assert error in ERROR_MAPPINGS, f"{error} not mapped"

    def test_fallback_exists(self):
        assert '__unknown__' in ERROR_MAPPINGS

    def test_io_errors_share_exit_code(self):
        for error in ('OSError', 'FileNotFoundError', 'PermissionError', 'IsADirectoryError'):
            assert ERROR_MAPPINGS[error]['exit_code'] == EXIT_IO


class TestGetErrorMapping:
    """Tests for get_error_mapping() and exit_code_for()."""

    def test_get_parameter_error(self):
        mapping = get_error_mapping('ParameterError')
        assert 'range' in mapping['simple_explanation'].lower()

    def test_get_unknown_error(self):
        mapping = get_error_mapping('NonExistentError')
        assert mapping == ERROR_MAPPINGS['__unknown__']

    @pytest.mark.parametrize('exc', [
        ParameterError('x'), ConfigError('x'), DimensionError('x'), AlphabetError('x'), ValidationError('x'),
    ])
    def test_usage_errors(self, exc):
        assert isinstance(exc, IdcapError)
        assert exit_code_for(exc) == EXIT_USAGE

    def test_io_errors(self):
        assert exit_code_for(FileNotFoundError('missing')) == EXIT_IO
        assert exit_code_for(OSError('disk')) == EXIT_IO

    def test_unmapped_error(self):
        assert exit_code_for(RuntimeError('boom')) == EXIT_USAGE


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
