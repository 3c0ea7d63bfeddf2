"""Finite-n correlation kernel of the squared singular values.

The integrable form writes K(x, y) = sum_j phi_j(x) psi_j(y) / (x - y) with
phi_j = (-1)^{j+1} delta^j P_n and
psi_j = -[j = 0] y Q_n + sum_{i=0}^{M-j} alpha_{i+j} delta^i Q_n.
"""
import numpy as np
from numpy.polynomial import legendre

from ginigap.core.specialfns.biorthogonal import (
    flag_precision, p_deltas, q_deltas)
from ginigap.core.specialfns.ensemble_spec_ie import EnsembleSpecIe
from ginigap.core.specialfns.q_route_enum import QRouteEnum
from .kernel_form_enum import KernelFormEnum
from .symmetric import alpha_coeffs, elementary_symmetric_all

DIAGONAL_DISTANCE = 1e-6
# Graded Gauss-Legendre mesh for the averaged form: panels
# [2^-(l+1), 2^-l], l < INTEGRAL_LEVELS, plus [0, 2^-INTEGRAL_LEVELS]
INTEGRAL_LEVELS = 30
INTEGRAL_PANEL_ORDER = 12


def _as_array(x: float | np.ndarray) -> np.ndarray:
    return np.atleast_1d(np.asarray(x, dtype=float))


def phi_rows(
        spec: EnsembleSpecIe,
        x: np.ndarray,
        scaled: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """Rows phi_j(x) and delta phi_j(x), j = 0..M."""
    deltas = p_deltas(spec, spec.n, x, spec.M + 1, scaled)
    signs = np.array([(-1)**(j + 1) for j in range(spec.M + 1)])[:, None]
    return signs * deltas[:-1], signs * deltas[1:]


def _psi_from_deltas(
        spec: EnsembleSpecIe,
        y: np.ndarray,
        q: np.ndarray) -> np.ndarray:
    alpha = alpha_coeffs(spec.nu_tail).alpha
    rows = []
    for j in range(spec.M + 1):
        row = sum(alpha[i + j] * q[i] for i in range(spec.M - j + 1))
        if j == 0:
            row = row - y * q[0]
        rows.append(row)
    return np.stack(rows)


def psi_rows(
        spec: EnsembleSpecIe,
        y: np.ndarray,
        scaled: bool = True,
        route: QRouteEnum = QRouteEnum.AUTO) -> tuple[np.ndarray, np.ndarray]:
    """Rows psi_j(y) and delta psi_j(y), j = 0..M."""
    q = q_deltas(spec, spec.n, y, spec.M + 1, scaled, route)
    psi = _psi_from_deltas(spec, y, q[:-1])
    # delta (y Q) = y Q + y delta Q
    delta_psi = _psi_from_deltas(spec, y, q[1:])
    delta_psi[0] -= y * q[0]
    return psi, delta_psi


def phi(
        spec: EnsembleSpecIe,
        j: int,
        x: float | np.ndarray,
        scaled: bool = False) -> float | np.ndarray:
    values = phi_rows(spec, _as_array(x), scaled)[0][j]
    return float(values[0]) if np.ndim(x) == 0 else values


def psi(
        spec: EnsembleSpecIe,
        j: int,
        y: float | np.ndarray,
        scaled: bool = False,
        route: QRouteEnum = QRouteEnum.AUTO) -> float | np.ndarray:
    values = psi_rows(spec, _as_array(y), scaled, route)[0][j]
    return float(values[0]) if np.ndim(y) == 0 else values


def _sum_matrix(
        spec: EnsembleSpecIe,
        x: np.ndarray,
        y: np.ndarray,
        route: QRouteEnum) -> np.ndarray:
    p = np.stack([p_deltas(spec, k, x, 0)[0] for k in range(spec.n)])
    q = np.stack([
        q_deltas(spec, k, y, 0, True, route)[0] for k in range(spec.n)])
    return p.T @ q


def _integrable_matrix(
        spec: EnsembleSpecIe,
        x: np.ndarray,
        y: np.ndarray,
        route: QRouteEnum) -> np.ndarray:
    phi_x, delta_phi_x = phi_rows(spec, x)
    psi_y = psi_rows(spec, y, route=route)[0]

    difference = x[:, None] - y[None, :]
    near = np.abs(difference) \
        < DIAGONAL_DISTANCE * np.maximum(1.0, np.abs(x))[:, None]
    with np.errstate(divide='ignore', invalid='ignore'):
        off_diagonal = (phi_x.T @ psi_y) / difference
        # Numerator vanishes on the diagonal; its x-derivative gives the limit
        on_diagonal = (delta_phi_x / x[None, :]).T @ psi_y
    return np.where(near, on_diagonal, off_diagonal)


def _integral_nodes() -> tuple[np.ndarray, np.ndarray]:
    t, w = legendre.leggauss(INTEGRAL_PANEL_ORDER)
    nodes, weights = [], []
    edges = [0.0] + [2.0**-l for l in range(INTEGRAL_LEVELS, -1, -1)]
    for a, b in zip(edges[:-1], edges[1:]):
        nodes.append(a + (b - a) * (t + 1) / 2)
        weights.append((b - a) * w / 2)
    return np.concatenate(nodes), np.concatenate(weights)


def _integral_matrix(
        spec: EnsembleSpecIe,
        x: np.ndarray,
        y: np.ndarray,
        route: QRouteEnum) -> np.ndarray:
    # K = -n int_0^1 p_{n-1}(ux) q_n(uy) du for the scaled pair
    u, w = _integral_nodes()
    p = p_deltas(spec, spec.n - 1, np.outer(u, x).ravel(), 0)[0]
    q = q_deltas(spec, spec.n, np.outer(u, y).ravel(), 0, True, route)[0]
    p = p.reshape(len(u), len(x))
    q = q.reshape(len(u), len(y))
    return -spec.n * (p * w[:, None]).T @ q


def kernel_matrix(
        spec: EnsembleSpecIe,
        x: np.ndarray,
        y: np.ndarray,
        form: KernelFormEnum = KernelFormEnum.INTEGRABLE,
        route: QRouteEnum = QRouteEnum.AUTO) -> np.ndarray:
    """Matrix K(x_i, y_j) in the given form, lambda folded in."""
    x = _as_array(x)
    y = _as_array(y)
    flag_precision(spec, np.concatenate([x, y]), 'Kernel')
    match form:
        case KernelFormEnum.SUM:
            return _sum_matrix(spec, x, y, route)
        case KernelFormEnum.INTEGRABLE:
            return _integrable_matrix(spec, x, y, route)
        case KernelFormEnum.INTEGRAL:
            return _integral_matrix(spec, x, y, route)
        case _:
            raise ValueError(f'Unrecognized kernel form {form}')


def kernel_eval(
        spec: EnsembleSpecIe,
        form: KernelFormEnum,
        x: float,
        y: float,
        route: QRouteEnum = QRouteEnum.AUTO) -> float:
    return float(kernel_matrix(spec, x, y, form, route)[0, 0])


def kernel_diagonal(
        spec: EnsembleSpecIe,
        x: float | np.ndarray,
        route: QRouteEnum = QRouteEnum.AUTO) -> float | np.ndarray:
    """K(x, x) as the first-order limit sum_j phi_j'(x) psi_j(x)."""
    x_array = _as_array(x)
    delta_phi_x = phi_rows(spec, x_array)[1]
    psi_x = psi_rows(spec, x_array, route=route)[0]
    values = np.sum(delta_phi_x * psi_x, axis=0) / x_array
    return float(values[0]) if np.ndim(x) == 0 else values


def hard_edge_scaled(
        spec: EnsembleSpecIe,
        x: float,
        y: float,
        route: QRouteEnum = QRouteEnum.AUTO) -> float:
    """(1/n) K_n(x/n, y/n) at `spec.n`."""
    n = spec.n
    return kernel_eval(
        spec, KernelFormEnum.INTEGRABLE, x / n, y / n, route) / n


def phi_psi_relation_residuals(
        spec: EnsembleSpecIe,
        x: np.ndarray,
        route: QRouteEnum = QRouteEnum.AUTO) -> dict[str, float]:
    """Largest relative residuals of the first-order system satisfied by
    phi_j and psi_j under delta = x d/dx."""
    x = _as_array(x)
    M, n = spec.M, spec.n
    e = elementary_symmetric_all(spec.nu_tail)
    phi_x, delta_phi = phi_rows(spec, x)
    psi_x, delta_psi = psi_rows(spec, x, route=route)

    def relative(residual: np.ndarray, *terms: np.ndarray) -> float:
        scale = max(max(np.abs(t).max() for t in terms), 1e-300)
        return float(np.abs(residual).max() / scale)

    residuals: dict[str, float] = {}

    residuals['phi_shift'] = max(
        [relative(delta_phi[j] + phi_x[j + 1], delta_phi[j], phi_x[j + 1])
         for j in range(M)], default=0.0)

    top = sum(
        (-1)**(M - k + 1) * e[M - k + 1] * phi_x[k] for k in range(1, M + 1)) \
        + (-1)**(M - 1) * x * (phi_x[1] + n * phi_x[0])
    residuals['phi_top'] = relative(delta_phi[M] - top, delta_phi[M], top)

    bottom = n * x * (-1)**M * psi_x[M]
    residuals['psi_bottom'] = relative(
        delta_psi[0] - bottom, delta_psi[0], bottom)

    shifts = []
    for j in range(1, M + 1):
        rhs = psi_x[j - 1] \
            + (-1)**(M - j) * (e[M - j + 1] - x * (j == 1)) * psi_x[M]
        shifts.append(relative(delta_psi[j] - rhs, delta_psi[j], rhs))
    residuals['psi_shift'] = max(shifts)

    return residuals
