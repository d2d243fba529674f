"""
Soft Covering Tests for PyIDCap

License: MIT
"""

import math

import numpy as np
import pytest

from pyidcap.channels import ChannelKernel, ProbDist
from pyidcap.errors import DimensionError, ParameterError, ValidationError
from pyidcap.info_measures import sibson_mi
from pyidcap.pauli_bloch import DensityMatrix, random_pure_state, random_state
from pyidcap.soft_covering import (
    SLACK_SE,
    Codebook,
    MType,
    count_mtypes,
    covering_rhs,
    default_sim_eps,
    empirical_type,
    enumerate_mtypes,
    finite_n_sim_bound,
    induced_output,
    low_rank_cover,
    low_rank_sufficient_m,
    monte_carlo_covering,
    mtype_count_bound,
    sample_codebook,
    sufficient_m,
)
from pyidcap.utils import tv_distance
from tests import seeded_rng


class TestCodebook:
    """Tests for codebook sampling and M-types."""

    def test_point_mass_codebook(self):
        cb = sample_codebook(ProbDist.point_mass(4, 2), 50, seed=1)
        assert np.all(cb.codewords == 2)
        assert cb.m == 50

    def test_same_seed_same_codebook(self):
        px = ProbDist([0.1, 0.2, 0.3, 0.4])
        a = sample_codebook(px, 100, seed=7)
        b = sample_codebook(px, 100, seed=7)
        assert np.array_equal(a.codewords, b.codewords)
        assert a.seed == 7

    def test_law_of_large_numbers(self):
        px = ProbDist([0.1, 0.2, 0.3, 0.4])
        mtype = empirical_type(sample_codebook(px, 100_000, seed=3))
        assert tv_distance(mtype.dist.probs, px.probs) <= 0.02

    def test_zero_size_rejected(self):
        with pytest.raises(ParameterError):
            sample_codebook(ProbDist.uniform(2), 0)

    def test_codeword_outside_alphabet(self):
        with pytest.raises(ValidationError):
            Codebook(np.array([0, 3]), 2)

    def test_mtype_validation(self):
        with pytest.raises(ValidationError):
            MType((2, 2), 3)
        assert MType((1, 2), 3).dist.probs[1] == pytest.approx(2 / 3)

    def test_mtype_counting(self):
        assert mtype_count_bound(2, 3) == pytest.approx(3.0)
        assert mtype_count_bound(8, 5) == pytest.approx(15.0)
        types = list(enumerate_mtypes(3, 4))
        assert len(types) == count_mtypes(3, 4) == 15
        assert len({t.counts for t in types}) == 15
        assert len(types) <= 3 ** 4


class TestInducedOutput:
    """Tests for induced_output()."""

    def test_single_codeword(self):
        w = ChannelKernel([[0.7, 0.2, 0.1], [0.1, 0.1, 0.8]])
        cb = Codebook(np.array([1]), 2)
        assert np.allclose(induced_output(cb, w).probs, w.rows[1])

    def test_equals_push_forward_of_type(self):
        rng = seeded_rng(30)
        w = ChannelKernel(rng.dirichlet(np.ones(5), size=4))
        cb = sample_codebook(ProbDist.uniform(4), 37, seed=5)
        via_type = w.push_forward(empirical_type(cb).dist).probs
        assert np.max(np.abs(induced_output(cb, w).probs - via_type)) <= 1e-12

    def test_uniform_codebook_symmetric_kernel(self):
        w = ChannelKernel.bsc(0.2).tensor_power(2)
        cb = Codebook(np.arange(4), 4)
        assert np.allclose(induced_output(cb, w).probs, 0.25)

    def test_alphabet_mismatch(self):
        with pytest.raises(DimensionError):
            induced_output(Codebook(np.array([0]), 3), ChannelKernel.bsc(0.1))


class TestCoveringBound:
    """Tests for covering_rhs() and sufficient_m()."""

    def test_rhs_value(self):
        assert covering_rhs(1.5, 1.0, 2 ** 11) == pytest.approx(2 ** (-14 / 3))
        assert covering_rhs(1.5, 1.0, 2 ** 11) == pytest.approx(0.0394, abs=1e-4)

    def test_rhs_near_order_two(self):
        assert covering_rhs(1.999, 5.0, 2 ** 5) == pytest.approx(0.5, abs=1e-3)

    def test_rhs_doubling(self):
        alpha = 1.25
        ratio = covering_rhs(alpha, 2.0, 64) / covering_rhs(alpha, 2.0, 32)
        assert ratio == pytest.approx(2 ** (-(alpha - 1) / alpha))

    def test_rhs_alpha_range(self):
        with pytest.raises(ParameterError):
            covering_rhs(2.0, 1.0, 4)
        with pytest.raises(ParameterError):
            covering_rhs(1.0, 1.0, 4)

    def test_sufficient_m_meets_target(self):
        rng = seeded_rng(31)
        for _ in range(50):
            alpha = float(rng.uniform(1.05, 1.95))
            eps = float(rng.uniform(0.01, 0.9))
            sup_i = float(rng.uniform(0.0, 8.0))
            m = sufficient_m(alpha, eps, sup_i)
            assert covering_rhs(alpha, sup_i, m) <= eps
            if 1 < m < 2 ** 40:
                assert covering_rhs(alpha, sup_i, m - 1) > eps

    @pytest.mark.parametrize('sup_i', [194.0, 594.0, 60.0])
    def test_sufficient_m_large_integer_exponent(self, sup_i):
        # exponent = I + 6 at alpha = 4/3, eps = 1/4
        m = sufficient_m(4.0 / 3.0, 0.25, sup_i)
        assert math.log2(m) == pytest.approx(sup_i + 6.0, abs=1e-9)
        assert covering_rhs(4.0 / 3.0, sup_i, m) == pytest.approx(0.25, rel=1e-9)

    def test_sufficient_m_small_constant(self):
        assert sufficient_m(4.0 / 3.0, 0.999, 0.0) == 1

    def test_sufficient_m_halving_eps(self):
        alpha = 1.5
        ratio = sufficient_m(alpha, 0.05, 6.0) / sufficient_m(alpha, 0.1, 6.0)
        assert ratio == pytest.approx(2 ** (alpha / (alpha - 1)), rel=0.01)

    def test_sufficient_m_monotone(self):
        ms = [sufficient_m(1.5, eps, 4.0) for eps in (0.05, 0.1, 0.2, 0.4)]
        assert all(b <= a for a, b in zip(ms, ms[1:]))
        ms = [sufficient_m(1.5, 0.1, i) for i in (0.0, 1.0, 2.5, 6.0)]
        assert all(b >= a for a, b in zip(ms, ms[1:]))

    def test_sufficient_m_eps_range(self):
        with pytest.raises(ParameterError):
            sufficient_m(1.5, 1.0, 1.0)

    def test_sufficient_m_huge_exponent(self):
        m = sufficient_m(1.5, 0.1, 2000.0)
        assert math.log2(m) == pytest.approx(2000.0 + 3 * (4 / 3 - 2 - math.log2(0.1)), rel=1e-9)


class TestMonteCarlo:
    """Tests for monte_carlo_covering()."""

    def test_point_mass_single_codeword(self):
        est = monte_carlo_covering(ProbDist.point_mass(4), ChannelKernel.bsc(0.1).tensor_power(2), 1, 30)
        assert est.mean_tv == 0.0
        assert est.std_err == 0.0

    def test_needs_thirty_trials(self):
        with pytest.raises(ParameterError):
            monte_carlo_covering(ProbDist.uniform(2), ChannelKernel.bsc(0.1), 4, 29)

    def test_thread_count_does_not_change_result(self):
        px, w = ProbDist.uniform(8), ChannelKernel.bsc(0.2).tensor_power(3)
        a = monte_carlo_covering(px, w, 20, 40, seed=9, threads=1)
        b = monte_carlo_covering(px, w, 20, 40, seed=9, threads=4)
        assert a == b

    def test_noiseless_kernel_small_mean(self):
        n = 3
        px, w = ProbDist.uniform(2 ** n), ChannelKernel.identity(2 ** n)
        m = 2 ** n * 64
        est = monte_carlo_covering(px, w, m, 100, seed=2)
        rhs = covering_rhs(1.5, sibson_mi(px, w, 1.5), m)
        assert est.mean_tv <= rhs + SLACK_SE * est.std_err
        assert est.mean_tv < 0.1

    @pytest.mark.slow
    def test_bsc_six_fold_bound_holds(self):
        px = ProbDist.uniform(64)
        w = ChannelKernel.bsc(0.25).tensor_power(6)
        for alpha in (1.25, 1.5, 1.75):
            i_alpha = sibson_mi(px, w, alpha)
            m = sufficient_m(alpha, 0.1, i_alpha)
            est = monte_carlo_covering(px, w, m, 200, seed=0)
            assert est.mean_tv <= covering_rhs(alpha, i_alpha, m) + SLACK_SE * est.std_err
            assert est.mean_tv <= 0.1 + SLACK_SE * est.std_err


class TestFiniteNSimultaneous:
    """Tests for finite_n_sim_bound()."""

    def test_default_eps(self):
        assert default_sim_eps(0.1, 0.1) == pytest.approx(0.36)

    def test_noiseless_trend(self):
        rates = [finite_n_sim_bound(n, 0.0, 1.5, 0.3) / n for n in (20, 40, 80)]
        assert rates[0] > rates[1] > rates[2] > 1.0

    def test_full_noise_trend(self):
        rates = [finite_n_sim_bound(n, 1.0, 1.5) / n for n in (10, 100, 1000)]
        assert rates[0] > rates[1] > rates[2]
        assert rates[2] < 0.05

    def test_above_capacity_minus_slack(self):
        from pyidcap.info_measures import binary_entropy
        for n in (50, 100, 200):
            assert finite_n_sim_bound(n, 0.5, 1.5) / n >= 1 - binary_entropy(0.25) - 0.2

    def test_eps_range(self):
        with pytest.raises(ParameterError):
            finite_n_sim_bound(10, 0.5, 1.5, eps=0.4)

    @pytest.mark.parametrize('n', [100, 200, 400])
    def test_noiseless_long_blocks(self, n):
        value = finite_n_sim_bound(n, 0.0, 4.0 / 3.0, 0.25)
        assert value == pytest.approx(math.log2(n) + n + 6.0, abs=1e-3)


class TestLowRankCover:
    """Tests for the fixed-input covering of a state by a low-rank one."""

    def test_pure_state(self):
        rho = random_pure_state(2, seeded_rng(32))
        cover = low_rank_cover(rho, 0.5, m=8, draws=10)
        assert cover.achieved_td <= 1e-12
        assert max(cover.mtype.counts) == 8

    def test_full_noise(self):
        rho = random_state(2, seeded_rng(33))
        cover = low_rank_cover(rho, 1.0, m=4, draws=10)
        assert cover.achieved_td <= 1e-12

    def test_random_state_below_rhs(self):
        from pyidcap.info_measures import cq_sandwiched_mi
        from pyidcap.soft_covering import _eigen_outputs
        rho = random_state(2, seeded_rng(34))
        probs, outputs = _eigen_outputs(rho, 0.5)
        i_alpha = cq_sandwiched_mi(probs, outputs, 1.5)
        cover = low_rank_cover(rho, 0.5, m=16, seed=1)
        assert cover.mtype.m == 16
        assert cover.achieved_td <= covering_rhs(1.5, i_alpha, 16)

    def test_sufficient_m_meets_target(self):
        rho = random_state(2, seeded_rng(35))
        m = low_rank_sufficient_m(rho, 0.5, eps=0.1)
        cover = low_rank_cover(rho, 0.5, m=m, draws=200)
        assert cover.achieved_td <= 0.1

    def test_more_types_help(self):
        rng = seeded_rng(36)
        rho = random_state(2, rng)
        small = [low_rank_cover(rho, 0.3, m=2, draws=20, seed=s).achieved_td for s in range(30)]
        large = [low_rank_cover(rho, 0.3, m=64, draws=20, seed=s).achieved_td for s in range(30)]
        assert np.median(large) <= np.median(small)

    def test_dimension_limit(self):
        with pytest.raises(DimensionError):
            low_rank_cover(DensityMatrix.maximally_mixed(5), 0.5, m=4)


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
