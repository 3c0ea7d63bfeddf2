import numpy as np
from pytest import approx, fixture, raises

from ginigap.core.dynamics.flow import hamiltonian
from ginigap.core.dynamics.integrate import gap_by_dynamics
from ginigap.core.fredholm.gap import gap_probability
from ginigap.core.sigma.chi import (
    chi_from_state, chi_jets, chi_system_along, sigma_from_state,
    sigma_pv_along)
from ginigap.core.sigma.painleve import (
    chi_system_residuals, sigma_pv_residual)
from ginigap.core.sigma.series import (
    branch_amplitudes, chi_series, gap_series, series_error_estimate,
    sigma_boundary_series)
from ginigap.core.specialfns.ensemble_spec_ie import EnsembleSpecIe
from ginigap.core.specialfns.specialfns_error import (
    FactorCountError, GenericityError)


@fixture
def two_factor_spec() -> EnsembleSpecIe:
    return EnsembleSpecIe.create(2, 2, [0.3, 1.7])


class TestPainleve():
    def test_vanishing_sigma(self):
        assert sigma_pv_residual(0.0, 0.0, 0.0, 1.5, 3, 0.5) == 0.0
        assert chi_system_residuals(
            (0.0, 0.0, 0.0, 0.0), (0.0, 0.0, 0.0), 1.5, 3, 0.3, 1.7) \
            == (0.0, 0.0)

    def test_exponential_solution(self):
        # n = 1, nu = 0: E = exp(-s), sigma = s
        for s in (0.1, 1.0, 4.0):
            assert sigma_pv_residual(s, 1.0, 0.0, s, 1, 0.0) == approx(
                0.0, abs=1e-12)

    def test_sigma_pv_along_trajectory(self):
        grid = [0.1, 0.5, 1.0, 2.0, 5.0]
        for n in (1, 3, 5):
            for nu in (0.5, 1.0, 2.0):
                spec = EnsembleSpecIe.create(1, n, [nu])
                assert max(sigma_pv_along(spec, grid)) <= 1e-5

    def test_chi_system_along_trajectory(
            self, two_factor_spec: EnsembleSpecIe):
        for lam in (0.5, 1.0):
            residuals = chi_system_along(
                two_factor_spec.with_lam(lam), [0.2, 0.5, 1.0, 2.0])
            assert max(max(pair) for pair in residuals) <= 1e-4

    def test_wrong_factor_count(self, two_factor_spec: EnsembleSpecIe):
        with raises(FactorCountError):
            sigma_pv_along(two_factor_spec, [1.0])
        with raises(FactorCountError):
            chi_system_along(EnsembleSpecIe.create(1, 2, [1.0]), [1.0])


class TestChi():
    def test_first_integral(self, two_factor_spec: EnsembleSpecIe):
        for state in gap_by_dynamics(two_factor_spec, [0.5, 1.5]).states:
            chi_0 = chi_from_state(state, two_factor_spec)[0]
            assert chi_0 == approx(
                hamiltonian(state, two_factor_spec), abs=1e-9)

    def test_derivative_against_differences(
            self, two_factor_spec: EnsembleSpecIe):
        h = 1e-3
        trajectory = gap_by_dynamics(two_factor_spec, [1.0 - h, 1.0, 1.0 + h])
        backward, middle, forward = (
            chi_from_state(state, two_factor_spec)
            for state in trajectory.states)
        for j in (0, 1):
            difference = (forward[j] - backward[j]) / (2 * h)
            assert middle[2 + j] == approx(difference, abs=1e-6)

    def test_jets(self, two_factor_spec: EnsembleSpecIe):
        jets = chi_jets(two_factor_spec, [0.5, 1.0])
        assert [jet.s for jet in jets] == [0.5, 1.0]
        assert all(np.isfinite(jet.chi_0).all() for jet in jets)

    def test_one_factor_sigma(self):
        spec = EnsembleSpecIe.create(1, 1, [0.0])
        state = gap_by_dynamics(spec, [1.0]).states[0]
        sigma, d_sigma, dd_sigma = sigma_from_state(state, spec)
        assert sigma == approx(1.0, abs=1e-8)
        assert d_sigma == approx(1.0, abs=1e-7)
        assert dd_sigma == approx(0.0, abs=1e-6)


class TestSeries():
    def test_boundary_series(self):
        spec = EnsembleSpecIe.create(1, 2, [2.0])
        series = sigma_boundary_series(spec)
        # 2 (3)_2 / (Gamma(2) Gamma(4)) = 12 / 6
        assert series.coefficients[0] == approx(2.0)
        assert series.exponents == approx([3.0, 4.0, 5.0])

        s = 0.05
        state = gap_by_dynamics(spec, [s]).states[0]
        sigma = sigma_from_state(state, spec)[0]
        assert sigma == approx(series.evaluate(s), rel=1e-3)

    def test_boundary_series_is_linear_in_lambda(self):
        spec = EnsembleSpecIe.create(1, 3, [1.5])
        half = sigma_boundary_series(spec.with_lam(0.5))
        full = sigma_boundary_series(spec)
        assert half.coefficients == approx(0.5 * full.coefficients)

    def test_amplitudes(self, two_factor_spec: EnsembleSpecIe):
        alpha, beta = branch_amplitudes(two_factor_spec)
        chi_0, chi_1 = chi_series(two_factor_spec)
        assert chi_0.coefficient_of(1.3) == approx(alpha)
        assert chi_0.coefficient_of(2.7) == approx(beta)
        assert chi_1.coefficient_of(2.3) / alpha == approx(
            1.0 / (2.3 * 2.7))
        assert alpha < 0

    def test_order_cap(self, two_factor_spec: EnsembleSpecIe):
        chi_0, chi_1 = chi_series(two_factor_spec, order_cap=2.7)
        assert chi_0.exponents == approx([1.3, 2.3, 2.7])
        assert chi_1.exponents == approx([2.3])
        assert chi_0.coefficient_of(2.7) == approx(
            chi_series(two_factor_spec)[0].coefficient_of(2.7))

    def test_single_column(self):
        spec = EnsembleSpecIe.create(2, 1, [0.3, 1.7])
        chi_1 = chi_series(spec)[1]
        assert chi_1.coefficients == approx(np.zeros(3))

    def test_chi_series_against_flow(self, two_factor_spec: EnsembleSpecIe):
        s = 1e-2
        chi_0, chi_1 = chi_series(two_factor_spec)
        state = gap_by_dynamics(two_factor_spec, [s]).states[0]
        values = chi_from_state(state, two_factor_spec)
        assert values[0] == approx(chi_0.evaluate(s), rel=1e-2)
        assert values[1] == approx(chi_1.evaluate(s), rel=5e-2)

    def test_genericity(self):
        with raises(GenericityError):
            chi_series(EnsembleSpecIe.create(2, 2, [1.0, 2.0]))
        with raises(GenericityError):
            gap_series(EnsembleSpecIe.create(2, 2, [0.5, 1.5]))

    def test_factor_count(self):
        three = EnsembleSpecIe.create(3, 2, [0.3, 1.7, 2.2])
        for expansion in (gap_series, chi_series, branch_amplitudes):
            with raises(FactorCountError):
                expansion(three)
        with raises(FactorCountError):
            sigma_boundary_series(EnsembleSpecIe.create(2, 2, [0.3, 1.7]))

    def test_gap_series_order(self):
        # Truncation error leads with s^{nu_1 + 3}
        points = (1e-2, 3e-3)
        for nu in ([0.3, 1.7], [0.4, 1.9]):
            spec = EnsembleSpecIe.create(2, 2, nu)
            series = gap_series(spec)
            errors = [
                abs(gap_probability(spec, s) - series.evaluate(s))
                for s in points
            ]
            exponent = np.log(errors[0] / errors[1]) \
                / np.log(points[0] / points[1])
            assert abs(exponent - (nu[0] + 3)) < 0.1
            assert errors[0] <= series_error_estimate(spec, points[0])

    def test_gap_series_one_factor(self):
        spec = EnsembleSpecIe.create(1, 2, [2.0])
        s = 0.02
        assert gap_series(spec).evaluate(s) == approx(
            gap_probability(spec, s), abs=series_error_estimate(spec, s))
