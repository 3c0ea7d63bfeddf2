"""Integrals of the gap flow and consistency checks along trajectories."""
import numpy as np
from scipy import special

from ginigap.core.kernel.symmetric import elementary_symmetric_all
from ginigap.core.specialfns.biorthogonal import p_deltas, q_deltas
from ginigap.core.specialfns.ensemble_spec_ie import EnsembleSpecIe
from ginigap.core.specialfns.specialfns_error import FactorCountError
from .cash_karp import advance
from .conserved_quantities_ie import ConservedQuantitiesIe
from .dynamics_error import TrajectoryDensityError
from .flow import (
    complex_vector_rhs, eta_derivatives, hamiltonian, rhs, triple,
    vector_rhs, xi_derivative)
from .primary_state_ie import PrimaryStateIe
from .trajectory_ie import TrajectoryIe

MIN_STENCIL_POINTS = 5


def _relative(residual: float, *terms: float) -> float:
    return abs(residual) / max(1.0, *(abs(t) for t in terms))


def xi_relation_residuals(
        state: PrimaryStateIe,
        spec: EnsembleSpecIe) -> np.ndarray:
    """Residuals of xi_2, xi_1, xi_0 written through chi_0, chi_1 and their
    derivatives, two factors only."""
    n, s = spec.n, state.s
    nu_1, nu_2 = spec.nu_tail
    e_1, e_2 = nu_1 + nu_2, nu_1 * nu_2
    eta, xi = state.eta, state.xi
    d_eta, dd_eta = eta_derivatives(state, spec)

    chi_0 = n * eta[0] + eta[1]
    chi_1 = n * eta[1] + eta[2]
    d_chi_0 = n * d_eta[0] + d_eta[1]
    dd_chi_0 = n * dd_eta[0] + dd_eta[1]
    d_chi_1 = n * d_eta[1] + d_eta[2]

    xi_2 = chi_0 - e_1
    xi_1 = e_2 - (1 + e_1) * chi_0 + chi_0**2 + s * d_chi_0 + chi_1
    numerator = n * chi_0 * (chi_0 - 1 - nu_1) * (chi_0 - 1 - nu_2) \
        + (eta[2] - chi_1) * (xi[1] + n * (n + e_1 - chi_0)) \
        + n * chi_1 * (chi_0 + n - 2) \
        - n * s * d_chi_0 * (1 + e_1 - 3 * chi_0) \
        + n * s * (s * dd_chi_0 + 2 * d_chi_1)
    xi_0 = numerator / (n * (1 + eta[0]))
    return np.array([
        _relative(xi[2] - xi_2, xi[2]),
        _relative(xi[1] - xi_1, xi[1]),
        _relative(xi[0] - xi_0, xi[0], xi_0),
    ])


def conserved_quantities(
        state: PrimaryStateIe,
        spec: EnsembleSpecIe) -> ConservedQuantitiesIe:
    char_poly = np.real(np.poly(triple(state, spec).B))
    char_poly_residual = None
    if spec.nu_min > 0:
        char_poly_residual = char_poly - np.poly(np.array(spec.nu))

    first_integral = None
    xi_relations = None
    if spec.M == 1:
        first_integral = float(
            state.xi[1] - spec.n * state.eta[0] - state.eta[1] + spec.nu[1])
    elif spec.M == 2:
        xi_relations = xi_relation_residuals(state, spec)

    H = hamiltonian(state, spec)
    return ConservedQuantitiesIe(
        orthogonality=state.orthogonality,
        hamiltonian=H,
        hamiltonian_identity=H - spec.n * state.eta[0] - state.eta[1],
        char_poly=char_poly,
        char_poly_residual=char_poly_residual,
        first_integral=first_integral,
        xi_relations=xi_relations)


def conserved_drift(
        state: PrimaryStateIe,
        spec: EnsembleSpecIe,
        reference: ConservedQuantitiesIe) -> dict[str, float]:
    """Relative change of every monitored integral against `reference`."""
    current = conserved_quantities(state, spec)
    drift = {
        'orthogonality': _relative(
            current.orthogonality - reference.orthogonality,
            float(np.sum(np.abs(state.u * state.v)))),
        'hamiltonian': _relative(
            current.hamiltonian_identity - reference.hamiltonian_identity,
            spec.n * state.eta[0] + state.eta[1]),
        'char_poly': float(np.max(
            np.abs(current.char_poly - reference.char_poly)
            / np.maximum(1.0, np.abs(reference.char_poly)))),
    }
    if current.first_integral is not None:
        drift['first_integral'] = _relative(
            current.first_integral - reference.first_integral, spec.nu[1])
    return drift


def _central_derivative(values: np.ndarray, h: float) -> np.ndarray:
    """Fourth order central differences at the interior points 2..N-3."""
    return (
        values[:-4] - 8 * values[1:-3] + 8 * values[3:-1] - values[4:]
    ) / (12 * h)


def schlesinger_residual(
        trajectory: TrajectoryIe,
        spec: EnsembleSpecIe) -> float:
    """Largest relative residual of
    s dA2/ds = [C + s E, A2] and dC/ds = [E, A2].

    Raises:
        TrajectoryDensityError:
            Fewer than five points or non-uniform spacing.
    """
    s = trajectory.s
    if len(s) < MIN_STENCIL_POINTS:
        raise TrajectoryDensityError(len(s))
    steps = np.diff(s)
    if not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
        raise TrajectoryDensityError(
            len(s), message='Trajectory points should be uniformly spaced')
    h = steps[0]

    triples = [triple(state, spec) for state in trajectory.states]
    A2 = np.stack([t.A2 for t in triples])
    C = np.stack([t.C for t in triples])
    E = triples[0].E
    d_A2 = _central_derivative(A2, h)
    d_C = _central_derivative(C, h)

    worst = 0.0
    for i, (a2, c, point) in enumerate(zip(A2[2:-2], C[2:-2], s[2:-2])):
        moving = c + point * E
        first = point * d_A2[i] - (moving @ a2 - a2 @ moving)
        second = d_C[i] - (E @ a2 - a2 @ E)
        scale = max(1.0, np.linalg.norm(a2), np.linalg.norm(c))
        worst = max(
            worst,
            np.linalg.norm(first) / scale,
            np.linalg.norm(second) / scale)
    return float(worst)


def m1_reduction_checks(
        state: PrimaryStateIe,
        spec: EnsembleSpecIe) -> dict[str, float]:
    """Relations special to one factor: y through x, xi_0 through eta, the
    determinant integral in eta form and two second order eta equations."""
    if spec.M != 1:
        raise FactorCountError(spec.M, (1,), 'Reduction checks')
    n, s, nu, lam = spec.n, state.s, spec.nu[1], spec.lam
    u, v, xi, eta = state.u, state.v, state.xi, state.eta

    # y = c x with c = lam s^nu e^-s / (n! Gamma(n+nu+1)) on the true pair
    if lam == 0:
        c = 0.0
    else:
        c = float(np.exp(
            np.log(lam) + nu * np.log(s) - s - special.gammaln(n + 1)
            - special.gammaln(n + nu + 1) + 2 * state.ln_scale))
    p_n = p_deltas(spec, n, s, 0)[0, 0]
    q_n = q_deltas(spec, n, s, 0)[0, 0]

    d_eta, dd_eta = eta_derivatives(state, spec)
    d_xi = xi_derivative(state, spec)
    chi = n * eta[0] + eta[1]
    xi_0 = (
        s * (n * d_eta[0] + d_eta[1]) + (n * eta[0] - 1) * chi
        + n * (eta[1] - nu * eta[0])) / (1 + eta[0])
    determinant = n * eta[0] * (chi - nu) \
        + n * eta[1] * (1 + d_eta[0]) \
        + (n + nu - n * eta[0]) * d_eta[1] \
        - xi[0] * (1 + eta[0] + d_eta[0]) \
        + (1 + eta[0]) * d_xi[0]
    eta_0_relation = s * dd_eta[0] + 2 * (1 + eta[0]) * d_eta[1] \
        + (2 * n * eta[0] + s - nu) * d_eta[0]
    eta_1_relation = s * dd_eta[1] \
        - (1 + eta[0]) * (n * d_eta[1] + d_xi[0]) \
        + (n * eta[1] - n * s - xi[0]) * d_eta[0]

    def scaled(residual: float, *terms: float) -> float:
        magnitude = max(abs(t) for t in terms)
        return abs(residual) / magnitude if magnitude > 0 else abs(residual)

    return {
        'weight_relation': scaled(q_n - c * p_n, q_n, c * p_n),
        'y1_relation': scaled(v[1] - c * u[0], v[1], c * u[0]),
        'y0_relation': scaled(v[0] + c * u[1], v[0], c * u[1]),
        'xi0_relation': _relative(xi[0] - xi_0, xi[0], xi_0),
        'determinant_integral': _relative(determinant, n * eta[1], xi[0]),
        'eta0_second_order': _relative(eta_0_relation, s * dd_eta[0]),
        'eta1_second_order': _relative(eta_1_relation, s * dd_eta[1]),
    }


def poisson_flow_residual(
        state: PrimaryStateIe,
        spec: EnsembleSpecIe,
        step: float = 1e-6) -> float:
    """Distance between rhs and the flow generated by H under
    {x_j, y_i} = delta_ij / s and {xi_j, eta_i} = (-1)^M delta_ij.

    In the real variables that flow reads u' = -dH/dv / s, v' = dH/du / s,
    xi' = (-1)^M dH/deta, eta' = -(-1)^M dH/dxi; gradients are central
    differences.
    """
    vector = state.to_vector()
    size = spec.M + 1
    gradient = np.zeros(4 * size)
    for k in range(4 * size):
        h = step * max(1.0, abs(vector[k]))
        forward, backward = vector.copy(), vector.copy()
        forward[k] += h
        backward[k] -= h
        gradient[k] = (
            hamiltonian(PrimaryStateIe.from_vector(state.s, forward), spec)
            - hamiltonian(PrimaryStateIe.from_vector(state.s, backward), spec)
        ) / (2 * h)
    d_u, d_v, d_xi, d_eta = np.split(gradient, 4)

    sign = (-1)**spec.M
    generated = np.concatenate(
        [-d_v / state.s, d_u / state.s, sign * d_eta, -sign * d_xi])
    direct = rhs(state, spec).to_vector()[:-1]
    return float(
        np.max(np.abs(generated - direct)) / max(1.0, np.max(np.abs(direct))))


def complex_shadow_residual(
        state: PrimaryStateIe,
        spec: EnsembleSpecIe,
        s_end: float,
        tol: float = 1e-10) -> dict[str, float]:
    """Integrate the complex form from x = i u, y = i v and compare with the
    real integration over the same interval.

    Returns the largest real part of x and y, imaginary part of xi and eta,
    and difference between the two integrations.
    """
    real_start = state.to_vector()
    complex_start = real_start.astype(complex)
    size = 2 * (spec.M + 1)
    complex_start[:size] *= 1j

    real_end = advance(
        lambda s, y: vector_rhs(s, y, spec.n),
        state.s, real_start, s_end, tol)[0]
    complex_end = advance(
        lambda s, y: complex_vector_rhs(s, y, spec.n),
        state.s, complex_start, s_end, tol)[0]

    shadow = np.concatenate(
        [complex_end[:size].imag, complex_end[size:].real])
    scale = max(1.0, float(np.max(np.abs(real_end))))
    return {
        'real_part': float(np.max(np.abs(complex_end[:size].real))),
        'imaginary_part': float(np.max(np.abs(complex_end[size:].imag))),
        'shadow_difference': float(
            np.max(np.abs(shadow - real_end)) / scale),
    }
