"""q-Pochhammer products, the alternating series, continued fraction,
pole boundary, remainder certification and contour quadrature."""

import cmath
import math

import numpy as np
import pytest

from dyckarea.errors import (
    AccuracyError,
    DomainError,
    NonConvergenceError,
    PoleProximityError,
    SearchFailureError,
)
from dyckarea.qseries import (
    ContourSpec,
    EvalSettings,
    contour_h,
    euler_maclaurin_check,
    g_cfrac,
    g_cfrac_grid,
    g_ratio,
    h_series,
    log_q_pochhammer_inf,
    q_pochhammer,
    t_infinity,
)

# frozen from 40-digit direct partial sums of the defining series
H_02_05 = 0.6262869831031218
H_01_05 = 0.8066191269521281
G_02_05 = 1.2879385149528385
QP_HALF = 0.2887880950866024


class TestEvalSettings:
    def test_epsilon_recomputed(self):
        s = EvalSettings(q=0.5)
        assert s.epsilon == pytest.approx(math.log(2.0), rel=1e-15)

    def test_validation(self):
        with pytest.raises(DomainError):
            EvalSettings(q=1.0)
        with pytest.raises(DomainError):
            EvalSettings(q=0.5, tol=0.0)
        with pytest.raises(DomainError):
            EvalSettings(q=0.5, precision_bits=32)

    def test_bits_floor(self):
        assert EvalSettings(q=0.5).bits_for(0.2) >= 53
        assert EvalSettings(q=0.5, precision_bits=128).bits_for(0.2) == 128

    def test_bits_scale_with_epsilon(self):
        loose = EvalSettings(q=0.9).bits_for(0.2)
        tight = EvalSettings(q=math.exp(-0.01)).bits_for(0.2)
        assert tight > loose


class TestQPochhammer:
    def test_empty_product(self):
        assert q_pochhammer(0.3, 0.5, 0) == 1.0

    def test_single_factor(self):
        assert q_pochhammer(0.5, 0.5, 1) == 0.5

    def test_euler_function(self):
        assert q_pochhammer(0.5, 0.5) == pytest.approx(QP_HALF, abs=1e-14)

    def test_complex_argument(self):
        value = q_pochhammer(0.2 + 0.1j, 0.5, 3)
        expected = (1 - (0.2 + 0.1j)) * (1 - (0.2 + 0.1j) * 0.5) * (1 - (0.2 + 0.1j) * 0.25)
        assert value == pytest.approx(expected, rel=1e-14)

    def test_infinite_needs_q_in_unit(self):
        with pytest.raises(DomainError):
            q_pochhammer(0.5, 1.2)

    def test_log_form(self):
        z = 0.3 + 0.4j
        assert log_q_pochhammer_inf(z, 0.6) == pytest.approx(
            cmath.log(q_pochhammer(z, 0.6)), abs=1e-12
        )


class TestHSeries:
    def test_at_origin(self):
        assert h_series(0.0, EvalSettings(q=0.7)) == 1.0

    def test_frozen_values(self):
        s = EvalSettings(q=0.5)
        assert h_series(0.2, s) == pytest.approx(H_02_05, abs=1e-13)
        assert h_series(0.1, s) == pytest.approx(H_01_05, abs=1e-13)

    def test_diagnostics(self):
        res = h_series(0.2, EvalSettings(q=0.5), full_output=True)
        assert res.terms_used < 30
        assert res.bits_lost < 8.0
        assert res.last_term < 1e-10

    def test_cancellation_grows_as_q_to_one(self):
        mild = h_series(0.2, EvalSettings(q=0.5), full_output=True)
        harsh = h_series(0.2, EvalSettings(q=math.exp(-0.02)), full_output=True)
        assert harsh.bits_lost > mild.bits_lost + 10

    def test_non_convergence(self):
        with pytest.raises(NonConvergenceError) as err:
            h_series(0.2, EvalSettings(q=0.5, max_terms=3))
        assert err.value.last_term is not None


class TestGRatio:
    def test_at_origin(self):
        assert g_ratio(0.0, EvalSettings(q=0.5)) == pytest.approx(1.0, abs=1e-15)

    def test_frozen_value(self):
        assert g_ratio(0.2, EvalSettings(q=0.5)) == pytest.approx(G_02_05, abs=1e-13)

    def test_catalan_trend(self):
        # towards C(0.24) = 1.6168... as q -> 1
        closed = (1.0 - math.sqrt(1.0 - 0.96)) / 0.48
        err_far = abs(g_ratio(0.24, EvalSettings(q=0.9)) - closed)
        err_near = abs(g_ratio(0.24, EvalSettings(q=0.999)) - closed)
        assert err_near < err_far
        assert err_near < 5e-2

    def test_pole_proximity(self):
        q = 0.5
        root = t_infinity(q)
        with pytest.raises(PoleProximityError):
            g_ratio(root, EvalSettings(q=q))


class TestGCfrac:
    def test_at_origin(self):
        assert g_cfrac(0.0, EvalSettings(q=0.3)) == 1.0

    def test_frozen_value(self):
        value, depth = g_cfrac(0.2, EvalSettings(q=0.5), full_output=True)
        assert value == pytest.approx(G_02_05, abs=1e-12)
        assert depth >= 64

    def test_beyond_pole_line(self):
        # converges past t_inf(0.5) = 0.624 where the series C route fails
        value = g_cfrac(0.35, EvalSettings(q=0.5))
        assert math.isfinite(value)
        assert value == pytest.approx(g_ratio(0.35, EvalSettings(q=0.5)), rel=1e-10)

    @pytest.mark.parametrize("q", [0.5, 0.9])
    def test_cross_method_grid(self, q):
        settings = EvalSettings(q=q)
        top = 0.9 * t_infinity(q, settings)
        for t in np.arange(0.05, top, 0.05):
            a = g_cfrac(float(t), settings)
            b = g_ratio(float(t), settings)
            assert abs(a - b) / abs(a) < 1e-9

    @pytest.mark.parametrize("q", [0.5, 0.9])
    def test_functional_equation(self, q):
        settings = EvalSettings(q=q)
        for t in (0.05, 0.15, 0.25):
            G = g_cfrac(t, settings)
            Gq = g_cfrac(q * t, settings)
            assert abs(G - 1.0 - t * G * Gq) < 1e-10

    def test_grid_matches_scalar(self):
        settings = EvalSettings(q=math.exp(-0.01))
        ts = np.array([0.05, 0.1, 0.2, 0.24])
        grid = g_cfrac_grid(ts, settings)
        for t, v in zip(ts, grid):
            assert v == pytest.approx(g_cfrac(float(t), settings), rel=1e-12)

    def test_deep_evaluation_consistency(self):
        # the pairwise matrix path kicks in past the scalar depth limit
        settings = EvalSettings(q=math.exp(-2e-5), tol=1e-10)
        value = g_cfrac(0.2, settings)
        closed = (1.0 - math.sqrt(0.2)) / 0.4
        assert value == pytest.approx(closed, abs=1e-4)
        assert value < closed  # area weight q < 1 suppresses every term


class TestPoleBoundary:
    def test_bracket_value(self):
        root = t_infinity(0.5)
        assert 0.55 < root < 0.65

    def test_sign_change_evidence(self):
        settings = EvalSettings(q=0.5)
        assert h_series(0.55, settings) > 0.0
        assert h_series(0.65, settings) < 0.0

    def test_monotone_decreasing(self):
        assert t_infinity(0.3) > t_infinity(0.6) > t_infinity(0.9)

    def test_towards_catalan_radius(self):
        far = t_infinity(0.9)
        near = t_infinity(0.99)
        assert far > near > 0.25
        assert near - 0.25 < 0.03

    def test_root_is_zero_of_h(self):
        q = 0.7
        root = t_infinity(q)
        settings = EvalSettings(q=q)
        assert h_series(root - 1e-6, settings) > 0.0
        assert h_series(root + 1e-6, settings) < 0.0


class TestEulerMaclaurin:
    @pytest.mark.parametrize("z", [0.3 + 0.3j, 1j])
    @pytest.mark.parametrize("q", [0.9, 0.99])
    def test_bound_holds(self, z, q):
        rc = euler_maclaurin_check(z, q)
        assert abs(rc.remainder) <= rc.bound
        assert rc.within_bound

    def test_remainder_limit(self):
        # R -> z/(12 (1-z)) as q -> 1
        z = 0.5 + 1.0j
        rc = euler_maclaurin_check(z, 0.999)
        assert rc.remainder == pytest.approx(z / (12.0 * (1.0 - z)), abs=1e-5)

    def test_error_shrinks_with_epsilon(self):
        # the ln-Pochhammer approximation error is eps * R with R -> const
        z = 0.3 + 0.3j
        errs = []
        for q in (0.9, 0.95, 0.975):
            rc = euler_maclaurin_check(z, q)
            errs.append(-math.log(q) * abs(rc.remainder))
        assert errs[0] / errs[1] == pytest.approx(2.0, rel=0.06)
        assert errs[1] / errs[2] == pytest.approx(2.0, rel=0.06)

    def test_real_axis_rejected(self):
        with pytest.raises(DomainError):
            euler_maclaurin_check(0.5 + 0.0j, 0.9)

    def test_grid(self):
        for q in (0.9, 0.99):
            for x in (-0.5, 0.0, 0.3, 0.6, 0.9):
                for y in (-1.0, -0.3, 0.3, 1.0):
                    rc = euler_maclaurin_check(complex(x, y), q)
                    assert abs(rc.remainder) <= rc.bound


class TestContour:
    def test_matches_series(self):
        settings = EvalSettings(q=0.5)
        value = contour_h(0.2, 0.5)
        assert value.real == pytest.approx(H_02_05, rel=1e-10)
        assert abs(value.imag) < 1e-10

    @pytest.mark.parametrize("t", [0.1, 0.2])
    @pytest.mark.parametrize("q", [0.3, 0.5])
    def test_grid_agreement(self, t, q):
        hs = h_series(t, EvalSettings(q=q))
        ch = contour_h(t, q)
        assert abs(ch.real - hs) / abs(hs) < 1e-8

    def test_truncation_stability(self):
        base = contour_h(0.2, 0.5, ContourSpec(lambda_max=60.0))
        extended = contour_h(0.2, 0.5, ContourSpec(lambda_max=120.0))
        assert abs(base - extended) < 1e-10

    def test_asymmetric_angles(self):
        value = contour_h(0.2, 0.5, ContourSpec(phi=math.pi / 3.0, psi=math.pi / 4.0))
        assert value.real == pytest.approx(H_02_05, rel=1e-8)

    def test_contour_validation(self):
        with pytest.raises(DomainError):
            ContourSpec(rho=1.5)
        with pytest.raises(DomainError):
            ContourSpec(phi=3.5)
        with pytest.raises(DomainError):
            contour_h(0.2, 1.2)
        with pytest.raises(DomainError):
            contour_h(-0.1, 0.5)
