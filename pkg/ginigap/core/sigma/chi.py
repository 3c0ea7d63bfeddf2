"""chi_0 = n eta_0 + eta_1 and chi_1 = n eta_1 + eta_2 along the gap flow.

chi_0 is s d/ds log det(1 - lambda K); for one factor sigma = -chi_0.
"""
import numpy as np

from ginigap.core.dynamics.flow import eta_derivatives
from ginigap.core.dynamics.integrate import DEFAULT_TOL, gap_by_dynamics
from ginigap.core.dynamics.primary_state_ie import PrimaryStateIe
from ginigap.core.specialfns.ensemble_spec_ie import EnsembleSpecIe
from ginigap.core.specialfns.specialfns_error import FactorCountError
from ginigap.core.validation import validate_range
from .chi_jet_ie import ChiJetIe
from .painleve import chi_system_terms, sigma_pv_terms

# Stencil step relative to s for the third derivative of chi_0
STENCIL_RATIO = 1e-3


def _combine(spec: EnsembleSpecIe, values: np.ndarray, j: int) -> float:
    return float(spec.n * values[j] + values[j + 1])


def chi_from_state(
        state: PrimaryStateIe,
        spec: EnsembleSpecIe) -> tuple[float, float, float, float]:
    """(chi_0, chi_1, chi_0', chi_1'), derivatives from the flow.

    For one factor chi_1 and its derivative are reported as zero.
    """
    d_eta = eta_derivatives(state, spec)[0]
    chi_0 = _combine(spec, state.eta, 0)
    d_chi_0 = _combine(spec, d_eta, 0)
    if spec.M < 2:
        return chi_0, 0.0, d_chi_0, 0.0
    return chi_0, _combine(spec, state.eta, 1), d_chi_0, \
        _combine(spec, d_eta, 1)


def chi_second_derivatives(
        state: PrimaryStateIe,
        spec: EnsembleSpecIe) -> tuple[float, float]:
    dd_eta = eta_derivatives(state, spec)[1]
    if spec.M < 2:
        return _combine(spec, dd_eta, 0), 0.0
    return _combine(spec, dd_eta, 0), _combine(spec, dd_eta, 1)


def sigma_from_state(
        state: PrimaryStateIe,
        spec: EnsembleSpecIe) -> tuple[float, float, float]:
    """(sigma, sigma', sigma'') with sigma = -n eta_0 - eta_1."""
    chi_0, _, d_chi_0, _ = chi_from_state(state, spec)
    dd_chi_0 = chi_second_derivatives(state, spec)[0]
    return -chi_0, -d_chi_0, -dd_chi_0


def chi_jets(
        spec: EnsembleSpecIe,
        s_points: list[float],
        tol: float = DEFAULT_TOL) -> list[ChiJetIe]:
    """Jets of chi_0 and chi_1 at every point; the third derivative of chi_0
    is a fourth order central difference of its analytic second derivative
    with step STENCIL_RATIO * s."""
    for s in s_points:
        validate_range(s, 's', min_value=0.0, min_inclusive=False)
    stencils = {
        s: [s + k * STENCIL_RATIO * s for k in (-2, -1, 0, 1, 2)]
        for s in s_points
    }
    grid = sorted({point for points in stencils.values() for point in points})
    states = dict(zip(grid, gap_by_dynamics(spec, grid, tol).states))

    jets = []
    for s, points in stencils.items():
        h = STENCIL_RATIO * s
        second = [chi_second_derivatives(states[p], spec)[0] for p in points]
        third = (second[0] - 8 * second[1] + 8 * second[3] - second[4]) \
            / (12 * h)
        chi_0, chi_1, d_chi_0, d_chi_1 = chi_from_state(states[s], spec)
        dd_chi_0, dd_chi_1 = chi_second_derivatives(states[s], spec)
        jets.append(ChiJetIe(
            s=s,
            chi_0=(chi_0, d_chi_0, dd_chi_0, float(third)),
            chi_1=(chi_1, d_chi_1, dd_chi_1)))
    return jets


def _relative(terms: list[float]) -> float:
    return abs(sum(terms)) / max(1.0, max(abs(t) for t in terms))


def sigma_pv_along(
        spec: EnsembleSpecIe,
        s_points: list[float],
        tol: float = DEFAULT_TOL) -> list[float]:
    """Relative sigma-PV residuals along an integrated one factor
    trajectory."""
    if spec.M != 1:
        raise FactorCountError(spec.M, (1,), 'sigma-PV')
    residuals = []
    for state in gap_by_dynamics(spec, s_points, tol).states:
        sigma, d_sigma, dd_sigma = sigma_from_state(state, spec)
        terms = sigma_pv_terms(
            sigma, d_sigma, dd_sigma, state.s, spec.n, spec.nu[1])
        terms[0] = -terms[0]
        residuals.append(_relative(terms))
    return residuals


def chi_system_along(
        spec: EnsembleSpecIe,
        s_points: list[float],
        tol: float = DEFAULT_TOL) -> list[tuple[float, float]]:
    """Relative residuals of both chi equations along an integrated two
    factor trajectory."""
    if spec.M != 2:
        raise FactorCountError(spec.M, (2,), 'Chi system')
    nu_1, nu_2 = spec.nu_tail
    residuals = []
    for jet in chi_jets(spec, s_points, tol):
        first, second = chi_system_terms(
            jet.chi_0, jet.chi_1, jet.s, spec.n, nu_1, nu_2)
        residuals.append((_relative(first), _relative(second)))
    return residuals
