import numpy as np
from numpy.polynomial import legendre
from scipy import linalg

from ginigap.core.kernel.kernel import kernel_diagonal, kernel_matrix
from ginigap.core.kernel.kernel_form_enum import KernelFormEnum
from ginigap.core.specialfns.ensemble_spec_ie import (
    EnsembleSpecIe, is_near_integer)
from ginigap.core.specialfns.q_route_enum import QRouteEnum
from ginigap.core.validation import validate_range
from ginigap.tools.log import log
from .fredholm_error import SingularSystemError
from .interval_union_ie import IntervalUnionIe
from .nystrom_operator_ie import NystromOperatorIe

# Reciprocal 1-norm condition number below which I - lam*K is singular
RCOND_FLOOR = 1e-12


def hard_edge_power(spec: EnsembleSpecIe) -> int:
    """Exponent q of the map x = a + (b-a) u^q on intervals touching zero.

    The kernel behaves like y^{nu_min} at the hard edge for one factor, and
    picks up logarithms for several factors.
    """
    if spec.M >= 2:
        return 4
    if not is_near_integer(spec.nu_min):
        return 2
    return 1


def quadrature(
        spec: EnsembleSpecIe,
        J: IntervalUnionIe,
        order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on J, `order` per interval."""
    t, w = legendre.leggauss(order)
    u = (t + 1) / 2
    nodes, weights = [], []
    for a, b in J.intervals:
        power = hard_edge_power(spec) if a == 0 else 1
        nodes.append(a + (b - a) * u**power)
        weights.append((b - a) * power * u**(power - 1) * w / 2)
    return np.concatenate(nodes), np.concatenate(weights)


def build_operator(
        spec: EnsembleSpecIe,
        J: IntervalUnionIe,
        order: int,
        form: KernelFormEnum = KernelFormEnum.INTEGRABLE,
        route: QRouteEnum = QRouteEnum.AUTO) -> NystromOperatorIe:
    validate_range(order, 'Order', min_value=4)
    nodes, weights = quadrature(spec, J, order)
    kernel = kernel_matrix(spec.with_lam(1.0), nodes, nodes, form, route)
    root = np.sqrt(weights)
    matrix = root[:, None] * kernel * root[None, :]
    if not np.all(np.isfinite(matrix)):
        log.warning(
            f'Nystrom matrix of order {order} on {J.endpoints} has'
            ' non-finite entries')
    return NystromOperatorIe(
        spec=spec, J=J, order=order, nodes=nodes, weights=weights,
        matrix=matrix, form=form, route=route)


def _factorize(
        op: NystromOperatorIe,
        lam: float) -> tuple[np.ndarray, np.ndarray]:
    system = np.eye(op.size) - lam * op.matrix
    lu, pivots = linalg.lu_factor(system, check_finite=False)
    gecon, = linalg.get_lapack_funcs(('gecon',), (lu,))
    rcond, _ = gecon(lu, np.linalg.norm(system, 1), norm='1')
    if not rcond > RCOND_FLOOR:
        raise SingularSystemError(lam)
    return lu, pivots


def fredholm_log_det(
        op: NystromOperatorIe,
        lam: float | None = None) -> tuple[float, float]:
    """Sign and log|det(I - lam*matrix)| from the LU diagonal."""
    lam = op.lam if lam is None else lam
    if lam == 0:
        return 1.0, 0.0
    lu, pivots = _factorize(op, lam)
    diagonal = np.diag(lu)
    swaps = np.count_nonzero(pivots != np.arange(len(pivots)))
    sign = (-1.0)**swaps * np.prod(np.sign(diagonal))
    return float(sign), float(np.sum(np.log(np.abs(diagonal))))


def fredholm_det(
        op: NystromOperatorIe,
        lam: float | None = None) -> float:
    sign, log_abs = fredholm_log_det(op, lam)
    return sign * float(np.exp(log_abs))


def resolvent_apply(
        op: NystromOperatorIe,
        lam: float,
        f: np.ndarray,
        transpose: bool = False) -> np.ndarray:
    """Solve g - lam int K(., y) g(y) dy = f at the nodes.

    `transpose=True` solves with the transposed kernel K'(x, y) = K(y, x).
    `f` may carry several right-hand sides as columns.
    """
    f = np.asarray(f, dtype=float)
    if lam == 0:
        return f.copy()
    root = op.root_weights if f.ndim == 1 else op.root_weights[:, None]
    lu, pivots = _factorize(op, lam)
    solution = linalg.lu_solve(
        (lu, pivots), root * f, trans=1 if transpose else 0)
    return solution / root


def nystrom_interpolate(
        op: NystromOperatorIe,
        lam: float,
        f_at_x: np.ndarray,
        g_nodes: np.ndarray,
        x: np.ndarray,
        transpose: bool = False) -> np.ndarray:
    """Extend a nodal solution g to points x through the integral equation
    g(x) = f(x) + lam sum_j K(x, x_j) w_j g_j.

    `g_nodes` may carry several solutions as columns, `f_at_x` then has one
    row per point of x.
    """
    spec = op.spec.with_lam(1.0)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if transpose:
        kernel = kernel_matrix(spec, op.nodes, x, op.form, op.route).T
    else:
        kernel = kernel_matrix(spec, x, op.nodes, op.form, op.route)
    weights = op.weights if np.ndim(g_nodes) == 1 else op.weights[:, None]
    return f_at_x + lam * kernel @ (weights * g_nodes)


def resolvent_diagonal(
        op: NystromOperatorIe,
        lam: float,
        x: float | np.ndarray) -> float | np.ndarray:
    """R(x, x) of R = lam K (1 - lam K)^{-1}.

    On J = (0, s) it gives the logarithmic derivative
    d/ds log det = -R(s, s).
    """
    spec = op.spec.with_lam(1.0)
    x_array = np.atleast_1d(np.asarray(x, dtype=float))
    column = kernel_matrix(spec, op.nodes, x_array, op.form, op.route)
    row = kernel_matrix(spec, x_array, op.nodes, op.form, op.route)
    solved = resolvent_apply(op, lam, lam * column)
    values = lam * kernel_diagonal(spec, x_array, op.route) \
        + lam * np.einsum('ij,j,ji->i', row, op.weights, solved)
    return float(values[0]) if np.ndim(x) == 0 else values


def nystrom_eigenvalues(op: NystromOperatorIe) -> np.ndarray:
    """Eigenvalues of the discretized lambda = 1 kernel."""
    return linalg.eigvals(op.matrix, check_finite=False)
