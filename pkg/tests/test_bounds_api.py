"""
Bounds API Tests for PyIDCap

License: MIT
"""

import numpy as np
import pytest

from pyidcap.bounds_api import (
    BoundCurve,
    CurveParams,
    IdCode,
    epsilon_net_count,
    find_crossing,
    general_bound_depolarizing,
    general_channel_bound,
    general_finite_n_bound,
    net_message_bound_log2,
    separation_check,
    simultaneous_capacity_product,
    simultaneous_decoders,
    sweep_curves,
    verify_id_code,
    verify_transmission_code,
)
from pyidcap.channels import ProductBasis
from pyidcap.covering_geometry import asymptotic_unrestricted_bound, finite_n_unrestricted_bound
from pyidcap.errors import DimensionError, ParameterError, ValidationError
from pyidcap.info_measures import binary_entropy
from pyidcap.pauli_bloch import DensityMatrix, random_state
from tests import KET_0, KET_1, pure, random_decoder, seeded_rng

GRID = [i / 100 for i in range(100)]


def projector_code(p: float) -> IdCode:
    states = (pure(KET_0), pure(KET_1))
    return IdCode(states, tuple(s.data for s in states), 1, p)


class TestIdCode:
    """Tests for IdCode validation and verify_id_code()."""

    def test_projector_code_noiseless(self):
        errors = verify_id_code(projector_code(0.0))
        assert errors.lambda1 == pytest.approx(0.0, abs=1e-12)
        assert errors.lambda2 == pytest.approx(0.0, abs=1e-12)

    def test_projector_code_noisy(self):
        errors = verify_id_code(projector_code(0.4))
        assert errors.lambda1 == pytest.approx(0.2)
        assert errors.lambda2 == pytest.approx(0.2)

    def test_always_accept(self):
        code = IdCode((pure(KET_0), pure(KET_1)), (np.eye(2), np.eye(2)), 1, 0.3)
        assert verify_id_code(code) == (pytest.approx(0.0, abs=1e-12), pytest.approx(1.0))

    def test_full_noise_cannot_identify(self):
        rng = seeded_rng(50)
        for _ in range(20):
            size = int(rng.integers(2, 5))
            states = tuple(random_state(2, rng) for _ in range(size))
            decoders = tuple(random_decoder(4, rng) for _ in range(size))
            errors = verify_id_code(IdCode(states, decoders, 2, 1.0))
            assert errors.lambda1 + errors.lambda2 >= 1.0 - 1e-10

    def test_separation_of_random_codes(self):
        rng = seeded_rng(51)
        for _ in range(30):
            n = int(rng.integers(1, 3))
            dim = 2 ** n
            states = tuple(random_state(n, rng) for _ in range(3))
            decoders = tuple(random_decoder(dim, rng) for _ in range(3))
            code = IdCode(states, decoders, n, float(rng.uniform()))
            errors = verify_id_code(code)
            assert separation_check(code) >= 1.0 - errors.lambda1 - errors.lambda2 - 1e-10

    def test_needs_two_messages(self):
        with pytest.raises(ValidationError):
            IdCode((pure(KET_0),), (np.eye(2),), 1, 0.1)

    def test_decoder_outside_unit_interval(self):
        with pytest.raises(ValidationError):
            IdCode((pure(KET_0), pure(KET_1)), (np.eye(2), 1.5 * np.eye(2)), 1, 0.1)

    def test_decoder_not_hermitian(self):
        with pytest.raises(ValidationError):
            IdCode((pure(KET_0), pure(KET_1)), (np.eye(2), np.array([[0.5, 0.5], [0.0, 0.5]])), 1, 0.1)

    def test_state_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            IdCode((pure(KET_0), DensityMatrix.maximally_mixed(2)), (np.eye(2), np.eye(2)), 1, 0.1)

    def test_block_length_limit(self):
        states = (DensityMatrix.maximally_mixed(4), DensityMatrix.maximally_mixed(4))
        code = IdCode(states, (np.eye(16), np.eye(16)), 4, 0.1)
        with pytest.raises(DimensionError):
            verify_id_code(code)


class TestSimultaneousCodes:
    """Tests for product-measurement decoders and transmission codes."""

    def test_coarse_grained_decoders(self):
        basis = ProductBasis.computational(2)
        d0, d1 = simultaneous_decoders(basis, [[0, 1], [2, 3]])
        assert np.allclose(d0, np.diag([1, 1, 0, 0]))
        assert np.allclose(d1, np.diag([0, 0, 1, 1]))

    def test_first_qubit_code(self):
        basis = ProductBasis.computational(2)
        decoders = simultaneous_decoders(basis, [[0, 1], [2, 3]])
        code = IdCode((pure(KET_0, KET_0), pure(KET_1, KET_0)), decoders, 2, 0.2)
        errors = verify_id_code(code)
        assert errors.lambda1 == pytest.approx(0.1)
        assert errors.lambda2 == pytest.approx(0.1)

    def test_outcome_out_of_range(self):
        with pytest.raises(ParameterError):
            simultaneous_decoders(ProductBasis.computational(1), [[0, 2]])

    def test_transmission_single_qubit(self):
        states = [pure(KET_0), pure(KET_1)]
        decoders = [s.data for s in states]
        assert verify_transmission_code(states, decoders, 0.3) == pytest.approx(0.15)

    def test_transmission_two_qubits(self):
        basis = ProductBasis.computational(2)
        states = [DensityMatrix.from_pure(basis.vector(x)) for x in range(4)]
        decoders = [basis.projector(x) for x in range(4)]
        assert verify_transmission_code(states, decoders, 0.2) == pytest.approx(1 - 0.9 ** 2)

    def test_transmission_needs_povm(self):
        with pytest.raises(ValidationError):
            verify_transmission_code([pure(KET_0), pure(KET_1)], [np.eye(2), np.eye(2)], 0.1)


class TestBoundFormulas:
    """Tests for the closed-form bounds."""

    def test_sim_capacity(self):
        assert simultaneous_capacity_product(0.5) == pytest.approx(0.18872, abs=1e-5)
        assert simultaneous_capacity_product(0.0) == 1.0
        assert simultaneous_capacity_product(1.0) == pytest.approx(0.0)

    def test_general_bound(self):
        for p in (0.0, 0.2, 0.7, 1.0):
            assert general_bound_depolarizing(p) == pytest.approx(2 - binary_entropy(p / 2))
        assert general_bound_depolarizing(1.0) == pytest.approx(1.0)

    def test_general_channel_bound(self):
        assert general_channel_bound(3.0, 0.5) == 3.5
        with pytest.raises(ParameterError):
            general_channel_bound(-1.0, 0.5)

    def test_epsilon_net(self):
        assert epsilon_net_count(2, 0.5) == pytest.approx(13.2877, abs=1e-4)
        with pytest.raises(ParameterError):
            epsilon_net_count(2, 1.0)

    def test_net_message_bound(self):
        assert net_message_bound_log2(2, 1, 1) == pytest.approx(4 * np.log2(10 / 0.6))
        with pytest.raises(ParameterError):
            net_message_bound_log2(2, 1, 1, eps=0.4)

    def test_general_finite_n_limit(self):
        value = general_finite_n_bound(10_000, 1.0, 0.5)
        assert value == pytest.approx(1.5, abs=0.01)
        assert value > 1.5

    def test_general_finite_n_decreasing(self):
        values = [general_finite_n_bound(n, 1.0, 0.5) for n in (10, 100, 1000)]
        assert values[0] > values[1] > values[2]

    def test_crossing(self):
        crossing = find_crossing()
        assert 0.80 < crossing < 0.85
        assert asymptotic_unrestricted_bound(crossing) == pytest.approx(
            general_bound_depolarizing(crossing), abs=1e-5)

    def test_crossing_without_sign_change(self):
        with pytest.raises(ParameterError):
            find_crossing(0.1, 0.3)


class TestSweep:
    """Tests for sweep_curves()."""

    def test_single_point(self):
        curve = sweep_curves([0.0])
        pt = curve.points[0]
        assert (pt.sim_cap, pt.unrestricted_bound, pt.general_bound) == (1.0, 2.0, 2.0)
        assert pt.finite_n_bound is None

    def test_full_grid(self):
        curve = sweep_curves(GRID)
        assert isinstance(curve, BoundCurve)
        assert len(curve.points) == 100
        assert curve.grid == GRID

    def test_ordering(self):
        curve = sweep_curves(GRID)
        for pt in curve.points:
            assert pt.sim_cap <= min(pt.unrestricted_bound, pt.general_bound) + 1e-12
            if pt.p > curve.crossing_p:
                assert pt.unrestricted_bound < pt.general_bound

    def test_value_at_point_nine(self):
        pt = sweep_curves([0.3, 0.9]).points[1]
        assert pt.unrestricted_bound == pytest.approx(0.8496, abs=1e-3)
        assert pt.general_bound == pytest.approx(2 - binary_entropy(0.45))

    def test_finite_n_column(self):
        params = CurveParams(finite_n=100)
        curve = sweep_curves([0.5, 0.9], params)
        assert curve.points[1].finite_n_bound == finite_n_unrestricted_bound(100, 0.9)
        assert len(curve.bound_points('finite_n')) == 2
        assert curve.metadata()['n'] == 100

    def test_threads_do_not_change_result(self):
        a = sweep_curves(GRID, CurveParams(finite_n=50, threads=1))
        b = sweep_curves(GRID, CurveParams(finite_n=50, threads=4))
        assert a.points == b.points

    def test_bound_points(self):
        curve = sweep_curves([0.1, 0.5])
        assert [bp.kind for bp in curve.bound_points('general')] == ['general', 'general']
        assert curve.bound_points('finite_n') == []
        with pytest.raises(ParameterError):
            curve.bound_points('other')

    def test_metadata(self):
        meta = sweep_curves([0.2]).metadata()
        assert meta['lambda1'] == 0.1
        assert 0.80 < meta['crossing_p'] < 0.85

    @pytest.mark.parametrize('grid', [[], [0.5, 0.5], [0.6, 0.5], [0.5, 1.0], [-0.1]])
    def test_bad_grid(self, grid):
        with pytest.raises(ParameterError):
            sweep_curves(grid)

    def test_bad_lambdas(self):
        with pytest.raises(ParameterError):
            sweep_curves([0.1], CurveParams(lambda1=0.5, lambda2=0.5))


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
