import math

import numpy as np
from pytest import approx, fixture, mark, raises

from ginigap.core.dynamics.cash_karp import advance
from ginigap.core.dynamics.conserved_quantities_ie import (
    ConservedQuantitiesIe)
from ginigap.core.dynamics.dynamics_error import (
    DriftError, StepSizeError, TrajectoryDensityError)
from ginigap.core.dynamics.flow import (
    hamiltonian, hamiltonian_trace_form, rhs, triple)
from ginigap.core.dynamics.integrate import (
    gap_by_dynamics, integrate, integrate_through)
from ginigap.core.dynamics.invariants import (
    complex_shadow_residual, conserved_quantities, m1_reduction_checks,
    poisson_flow_residual, schlesinger_residual)
from ginigap.core.dynamics.primary_state_ie import PrimaryStateIe
from ginigap.core.dynamics.seeding import (
    initial_state, initial_state_numeric, initial_state_series)
from ginigap.core.dynamics.seeding_enum import SeedingEnum
from ginigap.core.dynamics.trajectory_ie import TrajectoryIe
from ginigap.core.fredholm.gap import (
    gap_estimate, gap_probability, log_det_derivative)
from ginigap.core.fredholm.interval_union_ie import IntervalUnionIe
from ginigap.core.fredholm.nystrom import build_operator, resolvent_diagonal
from ginigap.core.specialfns.ensemble_spec_ie import EnsembleSpecIe
from ginigap.core.specialfns.specialfns_error import (
    FactorCountError, GenericityError)


@fixture
def laguerre_spec() -> EnsembleSpecIe:
    return EnsembleSpecIe.create(1, 3, [1.0])


@fixture
def two_factor_spec() -> EnsembleSpecIe:
    return EnsembleSpecIe.create(2, 2, [0.3, 1.7])


def random_state(M: int, seed: int = 7, s: float = 0.8) -> PrimaryStateIe:
    rng = np.random.default_rng(seed)
    u, v, xi, eta = rng.normal(size=(4, M + 1))
    return PrimaryStateIe(s=s, u=u, v=v, xi=xi, eta=eta)


class TestFlow():
    def test_one_factor_equations(self):
        spec = EnsembleSpecIe.create(1, 3, [0.5])
        state = random_state(1)
        n, s = spec.n, state.s
        u, v, xi, eta = state.u, state.v, state.xi, state.eta
        w = n * u[0] + u[1]
        d = rhs(state, spec)

        assert s * d.u[0] == approx(-w * eta[0] - u[1])
        assert s * d.u[1] == approx(
            -w * (eta[1] - s) + xi[0] * u[0] + xi[1] * u[1])
        assert s * d.v[1] == approx(
            -(s + xi[1]) * v[1] + v[0] + eta[0] * v[0] + eta[1] * v[1])
        assert s * d.v[0] == approx(
            -(n * s + xi[0]) * v[1] + n * (eta[0] * v[0] + eta[1] * v[1]))
        assert d.xi == approx(-w * v)
        assert d.eta == approx(-u * v[1])
        assert d.log_tau == approx((n * eta[0] + eta[1]) / s)

    def test_two_factor_equations(self, two_factor_spec: EnsembleSpecIe):
        state = random_state(2)
        n, s = two_factor_spec.n, state.s
        u, v, xi, eta = state.u, state.v, state.xi, state.eta
        w = n * u[0] + u[1]
        d = rhs(state, two_factor_spec)

        assert s * d.u[1] == approx(-w * eta[1] - u[2])
        assert s * d.u[2] == approx(-w * (eta[2] + s) + np.dot(xi, u))
        assert s * d.v[0] == approx(
            -(xi[0] - n * s) * v[2] + n * np.dot(eta, v))
        assert s * d.v[2] == approx(-xi[2] * v[2] + v[1])
        assert d.xi == approx(w * v)
        assert d.eta == approx(u * v[2])

    def test_decoupled(self, two_factor_spec: EnsembleSpecIe):
        state = random_state(2)
        state.u[:] = 0.0
        state.v[:] = 0.0
        d = rhs(state, two_factor_spec)
        assert np.all(d.xi == 0)
        assert np.all(d.eta == 0)

    def test_trace_form(self):
        for M in (1, 2, 3):
            nu = [0.25 * (m + 1) for m in range(M)]
            spec = EnsembleSpecIe.create(M, 4, nu)
            state = random_state(M, seed=M)
            assert hamiltonian_trace_form(state, spec) == approx(
                hamiltonian(state, spec), rel=1e-12, abs=1e-12)

    def test_triple(self, two_factor_spec: EnsembleSpecIe):
        state = random_state(2)
        t = triple(state, two_factor_spec)
        assert np.count_nonzero(t.E[:-1]) == 0
        assert t.E[-1, :2] == approx([-2.0, -1.0])
        assert np.linalg.matrix_rank(t.A2) == 1
        assert t.C[0, 1] == approx(-state.eta[0] - 1)

    def test_poisson_flow(self):
        for M in (1, 2, 3):
            nu = [0.5 * (m + 1) for m in range(M)]
            spec = EnsembleSpecIe.create(M, 3, nu)
            state = random_state(M, seed=10 + M)
            assert poisson_flow_residual(state, spec) <= 1e-7


class TestCashKarp():
    def test_exponential(self):
        y, _, steps = advance(
            lambda s, y: y, 0.0, np.ones(1), 1.0, 1e-12, 0.1)
        assert y[0] == approx(math.e, rel=1e-10)
        assert steps > 0

    def test_blow_up(self):
        with raises(StepSizeError):
            advance(lambda s, y: y**2, 0.5, np.array([2.0]), 2.0, 1e-8)


class TestSeeding():
    def test_initial_xi(
            self, laguerre_spec: EnsembleSpecIe,
            two_factor_spec: EnsembleSpecIe):
        state = initial_state_series(laguerre_spec, 1e-6)
        assert state.xi[1] == approx(-1.0, abs=1e-9)
        assert state.eta == approx([0.0, 0.0], abs=1e-9)

        state = initial_state_series(two_factor_spec, 1e-6)
        assert state.xi[1] == approx(0.3 * 1.7, abs=1e-6)
        assert state.xi[2] == approx(-2.0, abs=1e-6)

    def test_eta_leading_term(self):
        spec = EnsembleSpecIe.create(1, 2, [1.0])
        state = initial_state_series(spec, 0.01)
        assert state.eta[0] == approx(-1.5e-4, rel=0.05)

    def test_series_against_numeric(self):
        spec = EnsembleSpecIe.create(1, 3, [0.7])
        series = initial_state_series(spec, 1e-2)
        numeric = initial_state_numeric(spec, 1e-2)
        np.testing.assert_allclose(
            series.to_vector(), numeric.to_vector(), atol=1e-8)

    def test_series_against_numeric_two_factors(
            self, two_factor_spec: EnsembleSpecIe):
        series = initial_state_series(two_factor_spec, 1e-2)
        numeric = initial_state_numeric(two_factor_spec, 1e-2)
        np.testing.assert_allclose(
            series.to_vector(), numeric.to_vector(), atol=1e-7)

    def test_integrals_at_seed(
            self, laguerre_spec: EnsembleSpecIe,
            two_factor_spec: EnsembleSpecIe):
        for spec in (laguerre_spec, two_factor_spec):
            state = initial_state_series(spec, 1e-3)
            assert abs(state.orthogonality) <= 1e-10
            assert conserved_quantities(state, spec).max_residual() <= 1e-9

    def test_log_tau_at_seed(self, laguerre_spec: EnsembleSpecIe):
        state = initial_state_series(laguerre_spec, 1e-2)
        assert state.gap == approx(
            gap_probability(laguerre_spec, 1e-2), abs=1e-10)

    def test_genericity(self):
        spec = EnsembleSpecIe.create(2, 2, [1.0, 2.0])
        with raises(GenericityError):
            initial_state_series(spec)
        state = initial_state(spec, 1e-2, SeedingEnum.AUTO)
        assert np.all(np.isfinite(state.to_vector()))

    def test_integer_single_factor(self):
        # No logarithms for one factor, the series applies at nu = 0 too
        spec = EnsembleSpecIe.create(1, 2, [0.0])
        series = initial_state_series(spec, 1e-2)
        numeric = initial_state_numeric(spec, 1e-2)
        np.testing.assert_allclose(
            series.to_vector(), numeric.to_vector(), atol=1e-8)


class TestIntegrate():
    def test_exponential(self):
        spec = EnsembleSpecIe.create(1, 1, [0.0])
        trajectory = gap_by_dynamics(spec, [0.5, 1.0, 2.0])
        assert trajectory.gap == approx(
            np.exp(-np.array([0.5, 1.0, 2.0])), abs=1e-6)

    def test_route_equivalence(self):
        spec = EnsembleSpecIe.create(1, 5, [1.0])
        grid = [0.5, 1.0, 2.0, 5.0]
        for lam in (0.5, 1.0):
            trajectory = gap_by_dynamics(spec.with_lam(lam), grid)
            expected = [gap_probability(spec.with_lam(lam), s) for s in grid]
            assert trajectory.gap == approx(expected, abs=1e-6)

    def test_route_equivalence_two_factors(
            self, two_factor_spec: EnsembleSpecIe):
        for lam in (0.5, 1.0):
            spec = two_factor_spec.with_lam(lam)
            trajectory = gap_by_dynamics(spec, [0.5, 1.0])
            expected = [gap_probability(spec, s) for s in (0.5, 1.0)]
            assert trajectory.gap == approx(expected, abs=1e-6)

    def test_integrals(
            self, laguerre_spec: EnsembleSpecIe,
            two_factor_spec: EnsembleSpecIe):
        for spec, s_end in ((laguerre_spec, 5.0), (two_factor_spec, 2.0)):
            trajectory = gap_by_dynamics(spec, [1.0, s_end])
            assert trajectory.max_drift <= 1e-8
            for state in trajectory.states:
                quantities = conserved_quantities(state, spec)
                assert abs(quantities.hamiltonian_identity) <= 1e-9 * max(
                    1.0, abs(hamiltonian(state, spec)))
                assert quantities.scaled_hamiltonian_identity() <= 1e-9
                assert np.abs(quantities.char_poly_residual).max() <= 1e-8
                if quantities.xi_relations is not None:
                    assert quantities.xi_relations.max() <= 1e-7

    def test_hamiltonian_identity_scale(self):
        quantities = ConservedQuantitiesIe(
            orthogonality=0.0, hamiltonian=-2e3, hamiltonian_identity=1e-6,
            char_poly=np.array([1.0, 0.0]))
        assert quantities.scaled_hamiltonian_identity() == approx(5e-10)
        assert quantities.max_residual() == approx(5e-10)
        small = ConservedQuantitiesIe(
            orthogonality=0.0, hamiltonian=0.1, hamiltonian_identity=2e-9,
            char_poly=np.array([1.0, 0.0]))
        assert small.scaled_hamiltonian_identity() == approx(2e-9)

    def test_log_derivative(
            self, laguerre_spec: EnsembleSpecIe,
            two_factor_spec: EnsembleSpecIe):
        for spec in (laguerre_spec, two_factor_spec):
            grid = np.linspace(0.1, 1.0, 10)
            trajectory = gap_by_dynamics(spec, grid)
            for state in trajectory.states:
                assert hamiltonian(state, spec) == approx(
                    log_det_derivative(spec, state.s), abs=1e-5)

    def test_schlesinger(
            self, laguerre_spec: EnsembleSpecIe,
            two_factor_spec: EnsembleSpecIe):
        for spec in (laguerre_spec, two_factor_spec):
            start = integrate(initial_state(spec), spec, 0.9)
            trajectory = integrate_through(
                start, spec, np.linspace(1.0, 1.1, 11))
            assert schlesinger_residual(trajectory, spec) <= 1e-5

        with raises(TrajectoryDensityError):
            schlesinger_residual(
                TrajectoryIe(states=trajectory.states[:3]), two_factor_spec)

    def test_reductions(
            self, laguerre_spec: EnsembleSpecIe,
            two_factor_spec: EnsembleSpecIe):
        trajectory = gap_by_dynamics(laguerre_spec, [0.5, 1.0, 3.0])
        for state in trajectory.states:
            residuals = m1_reduction_checks(state, laguerre_spec)
            assert residuals['weight_relation'] <= 1e-10
            assert max(residuals.values()) <= 1e-7
        state = gap_by_dynamics(two_factor_spec, [0.5]).states[0]
        with raises(FactorCountError):
            m1_reduction_checks(state, two_factor_spec)

    def test_complex_shadow(self, two_factor_spec: EnsembleSpecIe):
        residuals = complex_shadow_residual(
            initial_state(two_factor_spec), two_factor_spec, 0.5)
        assert residuals['real_part'] <= 1e-12
        assert residuals['imaginary_part'] <= 1e-12
        assert residuals['shadow_difference'] <= 1e-10

    def test_drift_abort(self, laguerre_spec: EnsembleSpecIe):
        with raises(DriftError):
            integrate(
                initial_state(laguerre_spec), laguerre_spec, 1.0,
                drift_budget=0.0)

    def test_no_interaction(self, laguerre_spec: EnsembleSpecIe):
        trajectory = gap_by_dynamics(laguerre_spec.with_lam(0.0), [1.0, 2.0])
        assert trajectory.gap == approx([1.0, 1.0])


@mark.slow
class TestRoutesAtScale():
    def test_resolvent_diagonal_grid(
            self, laguerre_spec: EnsembleSpecIe,
            two_factor_spec: EnsembleSpecIe):
        # s R(s, s) = -H along the whole trajectory
        grid = np.linspace(0.2, 2.0, 10)
        for spec in (laguerre_spec, two_factor_spec):
            trajectory = gap_by_dynamics(spec, grid)
            for state in trajectory.states:
                J = IntervalUnionIe.from_gap(state.s)
                op = build_operator(spec, J, gap_estimate(spec, J).order)
                diagonal = state.s * resolvent_diagonal(
                    op, spec.lam, state.s)
                assert diagonal == approx(
                    -hamiltonian(state, spec), abs=1e-6)

    def test_one_factor_to_five(self):
        spec = EnsembleSpecIe.create(1, 5, [1.0])
        grid = [0.5, 1.0, 2.0, 3.5, 5.0]
        for lam in (0.5, 1.0):
            trajectory = gap_by_dynamics(spec.with_lam(lam), grid)
            expected = [gap_probability(spec.with_lam(lam), s) for s in grid]
            assert trajectory.gap == approx(expected, abs=1e-6)

    def test_integer_nu_two_factors(self):
        spec = EnsembleSpecIe.create(2, 2, [1.0, 2.0])
        trajectory = gap_by_dynamics(
            spec, [0.5, 1.0], seeding=SeedingEnum.NUMERIC)
        expected = gap_probability(spec, 1.0)
        assert expected == approx(0.7747190279602538, abs=1e-6)
        assert trajectory.gap[-1] == approx(expected, abs=1e-6)
        assert trajectory.gap[0] == approx(
            gap_probability(spec, 0.5), abs=1e-6)
