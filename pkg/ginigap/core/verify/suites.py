"""Verification suites aggregating every consistency check of the library.

Each suite returns a SuiteResultIe whose details hold the measured residual
of every check; a check passes when its residual is within tolerance.
"""
from typing import Callable

import numpy as np

from ginigap.core.dynamics.flow import hamiltonian
from ginigap.core.dynamics.invariants import (
    conserved_quantities, m1_reduction_checks, poisson_flow_residual,
    schlesinger_residual)
from ginigap.core.dynamics.integrate import (
    gap_by_dynamics, integrate, integrate_through)
from ginigap.core.dynamics.seeding import initial_state
from ginigap.core.fredholm.gap import (
    gap_estimate, gap_probability, hole_probabilities, log_det_derivative)
from ginigap.core.fredholm.interval_union_ie import IntervalUnionIe
from ginigap.core.fredholm.nystrom import build_operator, resolvent_diagonal
from ginigap.core.kernel.identities import check_exact_identities
from ginigap.core.kernel.kernel import (
    kernel_matrix, phi_psi_relation_residuals)
from ginigap.core.kernel.kernel_form_enum import KernelFormEnum
from ginigap.core.kernel.recurrence import recurrence_residuals
from ginigap.core.montecarlo.sampler import (
    LOCK_SAMPLES, LOCK_SIGMAS, check_normalization,
    sample_min_sq_singular_value, survival)
from ginigap.core.montecarlo.sampler_config_ie import SamplerConfigIe
from ginigap.core.sigma.chi import chi_system_along, sigma_pv_along
from ginigap.core.specialfns.ensemble_spec_ie import EnsembleSpecIe
from ginigap.tools.log import log
from .suite_enum import SuiteEnum
from .suite_result_ie import SuiteResultIe
from .verify_profile_ie import VerifyProfileIe

REPORT_SCHEMA = 1
# Monte Carlo agreement band in standard errors
MC_SIGMAS = 3.0

Checks = dict[str, tuple[float, float]]

ONE_FACTOR = EnsembleSpecIe.create(1, 3, [1.0])
TWO_FACTORS = EnsembleSpecIe.create(2, 2, [0.3, 1.7])
INTEGER_TWO_FACTORS = EnsembleSpecIe.create(2, 2, [1.0, 2.0])
X_GRID = np.array([0.15, 0.8, 1.7, 2.9])


def _relative_difference(value: np.ndarray, reference: np.ndarray) -> float:
    return float(np.max(
        np.abs(value - reference) / np.maximum(1.0, np.abs(reference))))


def identities_suite(profile: VerifyProfileIe) -> Checks:
    return {
        name: (0.0 if held else 1.0, 0.0)
        for name, held in check_exact_identities(profile.seed).items()
    }


def forms_suite(profile: VerifyProfileIe) -> Checks:
    x, y = X_GRID, X_GRID[::-1] + 0.05
    checks: Checks = {}
    for label, spec, forms, tol in (
            ('laguerre', EnsembleSpecIe.create(1, 3, [0.5]),
             (KernelFormEnum.INTEGRABLE, KernelFormEnum.INTEGRAL), 1e-9),
            ('generic', TWO_FACTORS,
             (KernelFormEnum.INTEGRABLE, KernelFormEnum.INTEGRAL), 1e-9),
            ('integer', INTEGER_TWO_FACTORS,
             (KernelFormEnum.INTEGRABLE,), 1e-8)):
        reference = kernel_matrix(spec, x, y, KernelFormEnum.SUM)
        for form in forms:
            checks[f'{label}_{form.value}'] = (
                _relative_difference(
                    kernel_matrix(spec, x, y, form), reference),
                tol)
    return checks


def recurrences_suite(profile: VerifyProfileIe) -> Checks:
    checks: Checks = {}
    for label, spec, tol in (
            ('laguerre', EnsembleSpecIe.create(1, 6, [0.5]), 1e-9),
            ('generic', EnsembleSpecIe.create(2, 4, [0.3, 1.7]), 1e-8)):
        checks[f'{label}_recurrences'] = (
            max(recurrence_residuals(spec, X_GRID).values()), tol)
        checks[f'{label}_phi_psi'] = (
            max(phi_psi_relation_residuals(spec, X_GRID).values()), 1e-9)
    return checks


def routes_suite(profile: VerifyProfileIe) -> Checks:
    checks: Checks = {}
    grid = [0.5, 1.0, 2.0]
    for label, spec in (
            ('one_factor', ONE_FACTOR), ('two_factors', TWO_FACTORS)):
        for lam in (0.5, 1.0):
            current = spec.with_lam(lam)
            dynamics = gap_by_dynamics(current, grid).gap
            fredholm = [gap_probability(current, s) for s in grid]
            checks[f'{label}_gap_lambda_{lam}'] = (
                float(np.max(np.abs(dynamics - fredholm))), 1e-6)

    # Non-generic nu seeds numerically
    dynamics = gap_by_dynamics(INTEGER_TWO_FACTORS, grid[:2]).gap
    fredholm = [gap_probability(INTEGER_TWO_FACTORS, s) for s in grid[:2]]
    checks['integer_nu_gap'] = (
        float(np.max(np.abs(dynamics - fredholm))), 1e-6)

    s = 1.0
    state = gap_by_dynamics(TWO_FACTORS, [s]).states[-1]
    H = hamiltonian(state, TWO_FACTORS)
    checks['hamiltonian_log_derivative'] = (
        abs(H - log_det_derivative(TWO_FACTORS, s)), 1e-5)

    J = IntervalUnionIe.from_gap(s)
    order = gap_estimate(TWO_FACTORS, J).order
    op = build_operator(TWO_FACTORS, J, order)
    checks['resolvent_diagonal'] = (
        abs(s * resolvent_diagonal(op, TWO_FACTORS.lam, s) + H), 1e-6)

    holes = hole_probabilities(
        ONE_FACTOR, IntervalUnionIe([0.0, 2.0]), ONE_FACTOR.n)
    checks['hole_probabilities_sum'] = (abs(sum(holes) - 1.0), 1e-9)
    return checks


def integrals_suite(profile: VerifyProfileIe) -> Checks:
    checks: Checks = {}
    for label, spec, s_end in (
            ('one_factor', ONE_FACTOR, 5.0),
            ('two_factors', TWO_FACTORS, 2.0)):
        trajectory = gap_by_dynamics(spec, [1.0, s_end])
        checks[f'{label}_drift'] = (trajectory.max_drift, 1e-8)
        quantities = [conserved_quantities(x, spec) for x in trajectory.states]
        checks[f'{label}_hamiltonian_identity'] = (
            max(q.scaled_hamiltonian_identity() for q in quantities),
            1e-9)
        checks[f'{label}_char_poly'] = (
            max(float(np.abs(q.char_poly_residual).max())
                for q in quantities), 1e-8)
        if spec.M == 2:
            checks[f'{label}_xi_relations'] = (
                max(float(q.xi_relations.max()) for q in quantities), 1e-7)
        else:
            checks[f'{label}_reductions'] = (
                max(max(m1_reduction_checks(x, spec).values())
                    for x in trajectory.states), 1e-7)
        checks[f'{label}_poisson_flow'] = (
            poisson_flow_residual(trajectory.states[-1], spec), 1e-7)

        start = integrate(initial_state(spec), spec, 0.9)
        dense = integrate_through(start, spec, np.linspace(1.0, 1.1, 11))
        checks[f'{label}_schlesinger'] = (
            schlesinger_residual(dense, spec), 1e-5)
    return checks


def painleve_suite(profile: VerifyProfileIe) -> Checks:
    grid = [0.1, 0.5, 1.0, 2.0, 5.0]
    checks: Checks = {}
    for n, nu in ((1, 0.5), (3, 1.0), (5, 2.0)):
        spec = EnsembleSpecIe.create(1, n, [nu])
        checks[f'sigma_pv_n{n}_nu{nu}'] = (
            max(sigma_pv_along(spec, grid)), 1e-5)
    for lam in (0.5, 1.0):
        residuals = chi_system_along(
            TWO_FACTORS.with_lam(lam), [0.2, 0.5, 1.0, 2.0])
        checks[f'chi_system_lambda_{lam}'] = (
            max(max(pair) for pair in residuals), 1e-4)
    return checks


def _sigma_distance(
        estimates: np.ndarray,
        errors: np.ndarray,
        expected: np.ndarray,
        samples: int) -> float:
    errors = np.maximum(errors, 1.0 / samples)
    return float(np.max(np.abs(estimates - expected) / errors))


def mc_suite(profile: VerifyProfileIe) -> Checks:
    mean = check_normalization(profile.seed)
    checks: Checks = {
        'normalization_lock': (
            abs(mean - 1.0) * np.sqrt(LOCK_SAMPLES), LOCK_SIGMAS),
    }

    grid = np.array([0.25, 0.5, 1.0, 2.0, 3.0])
    config = SamplerConfigIe(
        spec=EnsembleSpecIe.create(1, 1, [0.0]),
        samples=profile.samples, seed=profile.seed)
    estimates, errors = survival(sample_min_sq_singular_value(config), grid)
    checks['exponential_law'] = (
        _sigma_distance(estimates, errors, np.exp(-grid), profile.samples),
        MC_SIGMAS)

    config = SamplerConfigIe(
        spec=INTEGER_TWO_FACTORS, samples=profile.samples,
        seed=profile.seed + 1)
    values = sample_min_sq_singular_value(config)
    grid = np.quantile(values, [0.1, 0.3, 0.5, 0.7, 0.9])
    estimates, errors = survival(values, grid)
    expected = np.array(
        [gap_probability(INTEGER_TWO_FACTORS, s) for s in grid])
    checks['two_factors_fredholm'] = (
        _sigma_distance(estimates, errors, expected, profile.samples),
        MC_SIGMAS)
    return checks


SUITES: dict[SuiteEnum, Callable[[VerifyProfileIe], Checks]] = {
    SuiteEnum.IDENTITIES: identities_suite,
    SuiteEnum.FORMS: forms_suite,
    SuiteEnum.RECURRENCES: recurrences_suite,
    SuiteEnum.ROUTES: routes_suite,
    SuiteEnum.INTEGRALS: integrals_suite,
    SuiteEnum.PAINLEVE: painleve_suite,
    SuiteEnum.MC: mc_suite,
}


def run_suites(profile: VerifyProfileIe) -> list[SuiteResultIe]:
    results = []
    for suite in profile.suites:
        suite_log = log.bind(suite=suite.value)
        suite_log.info(f'Run suite {suite.value}')
        result = SuiteResultIe.from_checks(suite.value, SUITES[suite](profile))
        suite_log.info(
            f'Suite {suite.value} {"passed" if result.passed else "failed"},'
            f' max residual {result.max_residual:.2e}')
        results.append(result)
    return results


def verification_report(results: list[SuiteResultIe]) -> dict:
    return {
        'schema': REPORT_SCHEMA,
        'suites': [result.get_report_json() for result in results],
    }
