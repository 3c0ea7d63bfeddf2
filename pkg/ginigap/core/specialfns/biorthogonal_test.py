import math

import numpy as np
from pytest import approx, fixture, raises
from scipy import integrate

from ginigap.core.specialfns.biorthogonal import (
    delta_pow, eval_P, eval_Q, eval_Q_contour, eval_Q_series,
    ln_normalization, p_series, q_contour_deltas, q_series,
    q_series_deltas)
from ginigap.core.specialfns.contour_spec_ie import ContourSpecIe
from ginigap.core.specialfns.ensemble_spec_ie import EnsembleSpecIe
from ginigap.core.specialfns.q_route_enum import QRouteEnum
from ginigap.core.specialfns.specialfns_error import (
    ContourError, GenericityError)


@fixture
def laguerre_spec() -> EnsembleSpecIe:
    return EnsembleSpecIe.create(1, 4, [0.5])


@fixture
def generic_spec() -> EnsembleSpecIe:
    return EnsembleSpecIe.create(2, 4, [0.3, 1.7])


@fixture
def x_grid() -> np.ndarray:
    return np.array([0.05, 0.3, 0.9, 1.6, 3.2])


class TestEvalP():
    def test_constant(self, generic_spec: EnsembleSpecIe):
        assert eval_P(generic_spec, 0, 2.7) == 1.0

    def test_first_degree(
            self, laguerre_spec: EnsembleSpecIe,
            generic_spec: EnsembleSpecIe):
        assert eval_P(laguerre_spec, 1, 2.0) == approx(2.0 - 1.5)
        assert eval_P(generic_spec, 1, 2.0) == approx(2.0 - 1.3 * 2.7)

    def test_monic_laguerre(self, laguerre_spec: EnsembleSpecIe):
        # P_2 = x^2 - 2(nu+2)x + (nu+1)(nu+2)
        x = 1.7
        expected = x**2 - 2 * 2.5 * x + 1.5 * 2.5
        assert eval_P(laguerre_spec, 2, x) == approx(expected, rel=1e-13)

    def test_scaled(self, generic_spec: EnsembleSpecIe):
        true = eval_P(generic_spec, 3, 1.1)
        scaled = eval_P(generic_spec, 3, 1.1, scaled=True)
        assert true == approx(
            scaled * math.exp(ln_normalization(generic_spec, 3)), rel=1e-13)

    def test_series_form(self, generic_spec: EnsembleSpecIe):
        series = p_series(generic_spec, 3, scaled=False)
        assert series.evaluate(0.8) == approx(
            eval_P(generic_spec, 3, 0.8), rel=1e-12)

    def test_delta(self, laguerre_spec: EnsembleSpecIe):
        assert delta_pow('P', laguerre_spec, 1, 1, 0.8) == approx(0.8)
        assert delta_pow('P', laguerre_spec, 3, 0, 0.8) == approx(
            eval_P(laguerre_spec, 3, 0.8))

    def test_lowering(
            self, generic_spec: EnsembleSpecIe, x_grid: np.ndarray):
        # (delta - k) P_k = prod_i (k + nu_i) P_{k-1}
        for k in range(1, 5):
            lhs = delta_pow('P', generic_spec, k, 1, x_grid) \
                - k * eval_P(generic_spec, k, x_grid)
            rhs = np.prod([k + nu for nu in generic_spec.nu]) \
                * eval_P(generic_spec, k - 1, x_grid)
            np.testing.assert_allclose(
                lhs, rhs, rtol=1e-10, atol=1e-10 * np.abs(rhs).max())


class TestEvalQ():
    def test_exponential(self):
        spec = EnsembleSpecIe.create(1, 1, [0.0])
        x = np.array([0.1, 1.0, 4.0])
        np.testing.assert_allclose(
            eval_Q_series(spec, 0, x), np.exp(-x), rtol=1e-14)
        assert eval_Q_contour(spec, 0, 1.0) == approx(
            math.exp(-1), rel=1e-9)

    def test_lambda(self, laguerre_spec: EnsembleSpecIe):
        zero = laguerre_spec.with_lam(0.0)
        half = laguerre_spec.with_lam(0.5)
        assert eval_Q_series(zero, 2, 1.3) == 0.0
        assert eval_Q_series(half, 2, 1.3) == approx(
            0.5 * eval_Q_series(laguerre_spec, 2, 1.3), rel=1e-15)

    def test_minus_one(self, generic_spec: EnsembleSpecIe):
        assert eval_Q_contour(generic_spec, -1, 0.4) == 0.0

    def test_series_against_contour(
            self, laguerre_spec: EnsembleSpecIe,
            generic_spec: EnsembleSpecIe):
        x = np.array([0.2, 0.7, 1.5])
        for spec in (laguerre_spec, generic_spec):
            for k in range(4):
                series = eval_Q_series(spec, k, x)
                contour = eval_Q_contour(spec, k, x)
                np.testing.assert_allclose(
                    series, contour, rtol=1e-9,
                    atol=1e-12 * np.abs(series).max())

    def test_delta_series_against_contour(
            self, generic_spec: EnsembleSpecIe):
        x = np.array([0.25, 0.8])
        series = q_series_deltas(generic_spec, 2, x, 3)
        contour = q_contour_deltas(generic_spec, 2, x, 3)
        np.testing.assert_allclose(
            series, contour, rtol=1e-9, atol=1e-11 * np.abs(series).max())

    def test_raising(
            self, generic_spec: EnsembleSpecIe, x_grid: np.ndarray):
        # prod_i (k + nu_i + 1) Q_{k+1} = (-delta - k - 1) Q_k
        x = x_grid[:3]
        for k in range(3):
            lhs = np.prod([k + nu + 1 for nu in generic_spec.nu]) \
                * eval_Q(generic_spec, k + 1, x, QRouteEnum.CONTOUR)
            rhs = -delta_pow(
                'Q', generic_spec, k, 1, x, QRouteEnum.CONTOUR) \
                - (k + 1) * eval_Q(generic_spec, k, x, QRouteEnum.CONTOUR)
            np.testing.assert_allclose(
                lhs, rhs, rtol=1e-9, atol=1e-10 * np.abs(rhs).max())

    def test_integer_nu_contour(self):
        # nu = (0, 1): Q_0 = x e^{-x} for one factor, contour handles it
        spec = EnsembleSpecIe.create(1, 2, [1.0])
        x = np.array([0.3, 2.0])
        np.testing.assert_allclose(
            eval_Q_contour(spec, 0, x), x * np.exp(-x), rtol=1e-9)

    def test_integer_nu_small_x(self):
        x = np.array([1e-15, 1e-10, 1e-6, 1e-3])
        spec = EnsembleSpecIe.create(1, 2, [1.0])
        np.testing.assert_allclose(
            eval_Q_contour(spec, 0, x), x * np.exp(-x), rtol=1e-9)
        spec = EnsembleSpecIe.create(1, 4, [2.0])
        for k in range(3):
            np.testing.assert_allclose(
                eval_Q_contour(spec, k, x), eval_Q_series(spec, k, x),
                rtol=1e-9)

    def test_integer_nu_small_x_raising(self):
        # Relative check where Q_k ~ x log x for nu = (1, 2)
        spec = EnsembleSpecIe.create(2, 3, [1.0, 2.0])
        x = np.array([1e-12, 1e-8, 1e-4, 0.5])
        for k in range(2):
            lhs = np.prod([k + nu + 1 for nu in spec.nu]) \
                * eval_Q(spec, k + 1, x, QRouteEnum.CONTOUR)
            rhs = -delta_pow('Q', spec, k, 1, x, QRouteEnum.CONTOUR) \
                - (k + 1) * eval_Q(spec, k, x, QRouteEnum.CONTOUR)
            np.testing.assert_allclose(lhs, rhs, rtol=1e-8)

    def test_contour_not_settled(self, generic_spec: EnsembleSpecIe):
        contour = ContourSpecIe(
            node_count=8, max_node_count=16, agreement=1e-30)
        with raises(ContourError):
            eval_Q_contour(generic_spec, 2, 0.4, contour)

    def test_genericity(self):
        spec = EnsembleSpecIe.create(2, 3, [1.0, 2.0])
        with raises(GenericityError):
            eval_Q_series(spec, 1, 0.5)
        # AUTO falls back to the contour
        assert np.isfinite(eval_Q(spec, 1, 0.5))

    def test_contour_abscissa(self):
        with raises(ContourError):
            ContourSpecIe(abscissa=0.0)
        with raises(ContourError):
            ContourSpecIe(pole_offset=1.0)

    def test_series_expansion(self, generic_spec: EnsembleSpecIe):
        series = q_series(generic_spec, 2, 0.5, scaled=False)
        assert series.evaluate(0.4) == approx(
            eval_Q_series(generic_spec, 2, 0.4), rel=1e-12)
        assert series.leading_exponent == approx(0.3)


class TestBiorthogonality():
    def test_laguerre_pairs(self, laguerre_spec: EnsembleSpecIe):
        for j in range(3):
            for k in range(3):
                value, _ = integrate.quad(
                    lambda x: eval_P(laguerre_spec, j, x)
                    * eval_Q_series(laguerre_spec, k, x),
                    0, np.inf, limit=200)
                assert value == approx(float(j == k), abs=1e-9)
