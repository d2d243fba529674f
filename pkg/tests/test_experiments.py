"""
Experiment Driver Tests for PyIDCap

License: MIT
"""

import json

import pytest

from pyidcap.config import build_config
from pyidcap.errors import ParameterError
from pyidcap.experiments import (
    BOUNDS_HEADER,
    FINITE_N_HEADER,
    REDUCTION_HEADER,
    SCHEMA_VERSION,
    SOFT_COVER_HEADER,
    ExperimentResult,
    render,
    render_csv,
    render_json,
    run_experiment,
)
from pyidcap.info_measures import binary_entropy


def run(command, **flags):
    return run_experiment(build_config(command, flags, environ={}))


class TestBounds:
    """Tests for the bounds driver."""

    def test_default_grid_csv(self):
        text = render_csv(run('bounds'))
        lines = text.splitlines()
        assert len(lines) == 100
        assert lines[0] == ','.join(BOUNDS_HEADER)
        assert lines[1] == '0,1,2,2,'

    def test_values(self):
        result = run('bounds', p_grid='0.3,0.9')
        low, high = result.rows
        assert low['unrestricted_bound'] == 2.0
        assert low['sim_cap'] == pytest.approx(1 - binary_entropy(0.15))
        assert high['unrestricted_bound'] == pytest.approx(0.8496, abs=1e-3)
        assert high['general_bound'] == pytest.approx(2 - binary_entropy(0.45))

    def test_finite_n_column(self):
        result = run('bounds', p_grid='0.9', finite_n=100)
        assert result.rows[0]['finite_n_bound'] == pytest.approx(0.874, abs=0.01)

    def test_json_report(self):
        report = json.loads(render_json(run('bounds', p_grid='0.5,0.9')))
        assert report['schema_version'] == SCHEMA_VERSION
        assert report['command'] == 'bounds'
        assert 0.80 < report['metadata']['crossing_p'] < 0.85
        assert len(report['rows']) == 2

    def test_deterministic_bytes(self):
        first = render(run('bounds', p_grid='0:0.99:0.05', finite_n=50), 'json')
        second = render(run('bounds', p_grid='0:0.99:0.05', finite_n=50, threads=4), 'json')
        assert first == second

    def test_unknown_format(self):
        with pytest.raises(ParameterError):
            render(run('bounds', p_grid='0.5'), 'xml')

    def test_non_finite_values_are_null(self):
        report = {'rows': [{'rate': float('inf'), 'tail': float('-inf'), 'gap': float('nan'), 'n': 3}]}
        result = ExperimentResult('bounds', ('rate',), [], report)
        text = render_json(result)
        assert 'Infinity' not in text and 'NaN' not in text
        assert json.loads(text)['rows'][0] == {'rate': None, 'tail': None, 'gap': None, 'n': 3}


class TestReduction:
    """Tests for the verify-reduction driver."""

    def test_passes(self):
        result = run('verify-reduction', n=2, trials=12, seed=3)
        assert result.exit_code == 0
        assert result.header == REDUCTION_HEADER
        assert len(result.rows) == 12
        assert result.report['passed'] is True
        assert result.report['offending_seed'] is None
        assert max(row['tv'] for row in result.rows) <= 1e-10

    def test_same_seed_same_output(self):
        a = render_csv(run('verify-reduction', n=2, trials=5, seed=11))
        b = render_csv(run('verify-reduction', n=2, trials=5, seed=11))
        assert a == b


class TestSoftCover:
    """Tests for the soft-cover driver."""

    def test_point_source_single_codeword(self):
        result = run('soft-cover', n=2, p=0.5, m=1, trials=30, source='point', alphas='1.5')
        assert result.exit_code == 0
        assert result.header == SOFT_COVER_HEADER
        row = result.rows[0]
        assert row['mean_tv'] == 0.0
        assert row['m'] == 1
        assert row['bound_rhs'] > 0

    def test_record_per_alpha(self):
        result = run('soft-cover', n=2, p=0.5, m=16, trials=30, alphas='1.25,1.75')
        assert [row['alpha'] for row in result.rows] == [1.25, 1.75]
        assert result.report['slack_se'] == 3.0

    def test_too_few_trials(self):
        with pytest.raises(ParameterError):
            run('soft-cover', n=2, trials=10)

    def test_block_length_limit(self):
        with pytest.raises(ParameterError):
            run('soft-cover', n=12, trials=30)


class TestFiniteN:
    """Tests for the finite-n driver."""

    def test_rows(self):
        result = run('finite-n', n_list='50,100', thetas='0.1,0.25')
        assert result.header == FINITE_N_HEADER
        assert len(result.rows) == 4
        for row in result.rows:
            assert row['unrestricted_chernoff'] >= row['unrestricted_exact'] - 1e-12
            assert row['unrestricted_asymptotic'] == pytest.approx(0.8496, abs=1e-3)
            assert row['simultaneous_asymptotic'] == pytest.approx(1 - binary_entropy(0.45))

    def test_default_eps(self):
        assert run('finite-n', n_list='50').report['eps'] == pytest.approx(0.36)


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
