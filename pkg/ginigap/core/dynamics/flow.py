"""Hamiltonian flow of the primary variables on J = (0, s).

Under x_j = i u_j, y_j = i v_j the equations are

    s u_j' = -eta_j w - u_{j+1},                          j < M
    s u_M' = -(eta_M + (-1)^M s) w + sum_i xi_i u_i
    s v_0' = ((-1)^M n s - xi_0) v_M + n sum_i eta_i v_i
    s v_1' = ((-1)^M s - xi_1) v_M + v_0 + sum_i eta_i v_i
    s v_j' = -xi_j v_M + v_{j-1},                         j >= 2
    xi_j'  = (-1)^M w v_j
    eta_j' = (-1)^M u_j v_M

with w = n u_0 + u_1, and d log tau / ds = (n eta_0 + eta_1) / s.
"""
import numpy as np

from ginigap.core.specialfns.ensemble_spec_ie import EnsembleSpecIe
from .primary_state_ie import PrimaryStateIe
from .schlesinger_triple_ie import SchlesingerTripleIe


def _linear_part(
        s: float,
        n: int,
        x: np.ndarray,
        y: np.ndarray,
        xi: np.ndarray,
        eta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    M = len(x) - 1
    sign = (-1)**M
    w = n * x[0] + x[1]

    dx = np.empty_like(x)
    dx[:M] = -eta[:M] * w - x[1:]
    dx[M] = -(eta[M] + sign * s) * w + np.dot(xi, x)

    bracket = np.dot(eta, y)
    dy = np.empty_like(y)
    dy[0] = (sign * n * s - xi[0]) * y[M] + n * bracket
    dy[1] = (sign * s - xi[1]) * y[M] + y[0] + bracket
    dy[2:] = -xi[2:] * y[M] + y[1:M]
    return dx / s, dy / s


def _derivatives(
        s: float,
        n: int,
        x: np.ndarray,
        y: np.ndarray,
        xi: np.ndarray,
        eta: np.ndarray,
        product_sign: int) -> tuple[np.ndarray, ...]:
    dx, dy = _linear_part(s, n, x, y, xi, eta)
    w = n * x[0] + x[1]
    dxi = product_sign * w * y
    deta = product_sign * x * y[-1]
    dlog_tau = (n * eta[0] + eta[1]) / s
    return dx, dy, dxi, deta, dlog_tau


def vector_rhs(s: float, vector: np.ndarray, n: int) -> np.ndarray:
    """Right-hand side on the flat layout of `PrimaryStateIe.to_vector`."""
    u, v, xi, eta = np.split(vector[:-1], 4)
    M = len(u) - 1
    du, dv, dxi, deta, dlog_tau = _derivatives(
        s, n, u, v, xi, eta, (-1)**M)
    return np.concatenate([du, dv, dxi, deta, [dlog_tau]])


def complex_vector_rhs(s: float, vector: np.ndarray, n: int) -> np.ndarray:
    """Same flow written for complex x, y, xi, eta.

    Products x_a y_b enter the xi and eta equations with the opposite sign of
    the real form since i^2 = -1.
    """
    x, y, xi, eta = np.split(vector[:-1], 4)
    M = len(x) - 1
    dx, dy, dxi, deta, dlog_tau = _derivatives(
        s, n, x, y, xi, eta, -(-1)**M)
    return np.concatenate([dx, dy, dxi, deta, [dlog_tau]])


def rhs(state: PrimaryStateIe, spec: EnsembleSpecIe) -> PrimaryStateIe:
    """Derivatives d/ds of every field, returned as a state at the same s."""
    derivative = vector_rhs(state.s, state.to_vector(), spec.n)
    return PrimaryStateIe.from_vector(state.s, derivative, state.ln_scale)


def eta_derivatives(
        state: PrimaryStateIe,
        spec: EnsembleSpecIe) -> tuple[np.ndarray, np.ndarray]:
    """First and second derivatives of eta from the flow."""
    sign = (-1)**spec.M
    d = rhs(state, spec)
    first = sign * state.u * state.v[-1]
    second = sign * (d.u * state.v[-1] + state.u * d.v[-1])
    return first, second


def xi_derivative(state: PrimaryStateIe, spec: EnsembleSpecIe) -> np.ndarray:
    w = spec.n * state.u[0] + state.u[1]
    return (-1)**spec.M * w * state.v


def hamiltonian(state: PrimaryStateIe, spec: EnsembleSpecIe) -> float:
    """H_n(s); equals n eta_0 + eta_1 along the flow."""
    u, v, xi, eta, s = state.u, state.v, state.xi, state.eta, state.s
    M = spec.M
    w = spec.n * u[0] + u[1]
    value = (-1)**M * s * w * v[M] \
        + np.dot(u[1:], v[:M]) \
        - np.dot(xi, u) * v[M] \
        + w * np.dot(eta, v)
    return float(value)


def triple(state: PrimaryStateIe, spec: EnsembleSpecIe) -> SchlesingerTripleIe:
    M, n = spec.M, spec.n
    size = M + 1

    E = np.zeros((size, size))
    E[M, 0] = n
    E[M, 1] = 1.0
    E *= (-1)**(M + 1)

    C = np.zeros((size, size))
    C[:M, 0] = -n * state.eta[:M]
    C[:M, 1] = -state.eta[:M]
    C[np.arange(M), np.arange(1, M + 1)] -= 1.0
    C[M, :] = state.xi
    C[M, 0] -= n * state.eta[M]
    C[M, 1] -= state.eta[M]

    A2 = -np.outer(state.u, state.v)
    return SchlesingerTripleIe(E=E, C=C, A2=A2)


def hamiltonian_trace_form(
        state: PrimaryStateIe,
        spec: EnsembleSpecIe) -> float:
    """H = Tr(C A2) + s Tr(E A2)."""
    t = triple(state, spec)
    return float(np.trace(t.C @ t.A2) + state.s * np.trace(t.E @ t.A2))
