"""
Utility Functions Tests for PyIDCap

License: MIT
"""

import math

import numpy as np
import pytest

from pyidcap.errors import DimensionError, ParameterError
from pyidcap.utils import (
    RunningStats,
    check_lambdas,
    check_probability,
    format_float,
    is_power_of_two,
    make_rng,
    num_qubits,
    parallel_map,
    parse_grid,
    parse_int_list,
    resolve_threads,
    round_sig,
    trial_seeds,
    tv_distance,
)


class TestDimensions:
    """Tests for is_power_of_two() and num_qubits()."""

    def test_powers(self):
        assert is_power_of_two(1)
        assert is_power_of_two(64)
        assert not is_power_of_two(12)
        assert not is_power_of_two(0)

    def test_num_qubits(self):
        assert num_qubits(8) == 3

    def test_num_qubits_rejects(self):
        with pytest.raises(DimensionError):
            num_qubits(6)
        with pytest.raises(DimensionError):
            num_qubits(1)


class TestChecks:
    """Tests for check_probability() and check_lambdas()."""

    def test_closed_interval(self):
        assert check_probability(0) == 0.0
        assert check_probability(1) == 1.0

    def test_open_ends(self):
        with pytest.raises(ParameterError):
            check_probability(0.0, open_low=True)
        with pytest.raises(ParameterError):
            check_probability(1.0, open_high=True)

    def test_not_a_number(self):
        with pytest.raises(ParameterError):
            check_probability('abc')
        with pytest.raises(ParameterError):
            check_probability(float('nan'))

    def test_lambdas(self):
        assert check_lambdas(0.1, 0.2) == pytest.approx(0.7)
        with pytest.raises(ParameterError):
            check_lambdas(0.5, 0.5)


class TestRandomness:
    """Tests for make_rng() and trial_seeds()."""

    def test_same_seed_same_stream(self):
        assert np.array_equal(make_rng(5).random(10), make_rng(5).random(10))

    def test_different_seed(self):
        assert not np.array_equal(make_rng(5).random(10), make_rng(6).random(10))

    def test_negative_seed(self):
        with pytest.raises(ParameterError):
            make_rng(-1)

    def test_trial_seeds(self):
        seeds = trial_seeds(42, 100)
        assert len(set(seeds)) == 100
        assert seeds == trial_seeds(42, 100)
        assert trial_seeds(42, 10) == seeds[:10]
        assert trial_seeds(42, 0) == []


class TestStatistics:
    """Tests for tv_distance() and RunningStats."""

    def test_tv_distance(self):
        assert tv_distance([1, 0], [0, 1]) == 1.0
        assert tv_distance([0.5, 0.5], [0.5, 0.5]) == 0.0

    def test_tv_size_mismatch(self):
        with pytest.raises(DimensionError):
            tv_distance([1.0], [0.5, 0.5])

    def test_running_stats(self):
        values = [0.1, 0.4, 0.2, 0.9, 0.3]
        stats = RunningStats().extend(values)
        assert stats.mean == pytest.approx(np.mean(values))
        assert stats.variance == pytest.approx(np.var(values, ddof=1))
        assert stats.std_err == pytest.approx(np.std(values, ddof=1) / math.sqrt(5))
        assert stats.maximum == 0.9

    def test_running_stats_single(self):
        stats = RunningStats().extend([0.5])
        assert stats.variance == 0.0
        assert stats.std_err == 0.0


class TestParallelMap:
    """Tests for resolve_threads() and parallel_map()."""

    def test_resolve(self):
        assert resolve_threads(3) == 3
        assert resolve_threads(0) >= 1
        with pytest.raises(ParameterError):
            resolve_threads(-2)

    def test_order_preserved(self):
        items = list(range(50))
        assert parallel_map(lambda x: x * x, items, 4) == [x * x for x in items]

    def test_empty(self):
        assert parallel_map(abs, [], 4) == []


class TestParsing:
    """Tests for the grid and list parsers and number formatting."""

    def test_range_excludes_stop(self):
        assert parse_grid('0:0.3:0.1') == [0.0, 0.1, 0.2]

    def test_hundredths(self):
        grid = parse_grid('0:0.99:0.01')
        assert len(grid) == 99
        assert grid[-1] == 0.98

    def test_list(self):
        assert parse_grid('0.5, 0.9') == [0.5, 0.9]

    @pytest.mark.parametrize('text', ['', '0:1', '0:1:0', 'a,b', '1:0:0.1'])
    def test_bad_grid(self, text):
        with pytest.raises(ParameterError):
            parse_grid(text)

    def test_int_list(self):
        assert parse_int_list('50,100,200') == [50, 100, 200]
        with pytest.raises(ParameterError):
            parse_int_list('10,0')
        with pytest.raises(ParameterError):
            parse_int_list('10,x')

    def test_format_float(self):
        assert format_float(1 / 3) == '0.333333333'
        assert format_float(None) == ''
        assert format_float(math.inf) == 'inf'

    def test_round_sig(self):
        assert round_sig(2 / 3) == 0.666666667
        assert round_sig(None) is None


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
