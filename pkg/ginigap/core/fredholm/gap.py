import numpy as np

from ginigap.core.kernel.kernel_form_enum import KernelFormEnum
from ginigap.core.specialfns.ensemble_spec_ie import EnsembleSpecIe
from ginigap.core.specialfns.q_route_enum import QRouteEnum
from ginigap.core.validation import validate_range
from ginigap.tools.log import log
from .fredholm_error import ConvergenceError
from .gap_estimate_ie import GapEstimateIe
from .interval_union_ie import IntervalUnionIe
from .nystrom import (
    build_operator, fredholm_det, fredholm_log_det, nystrom_eigenvalues)

START_ORDER = 32
MAX_ORDER = 512
AGREEMENT = 1e-9


def gap_estimate(
        spec: EnsembleSpecIe,
        J: IntervalUnionIe,
        *,
        tol: float = AGREEMENT,
        start_order: int = START_ORDER,
        max_order: int = MAX_ORDER,
        form: KernelFormEnum = KernelFormEnum.INTEGRABLE,
        route: QRouteEnum = QRouteEnum.AUTO) -> GapEstimateIe:
    """det(1 - lambda K_J) with order doubling until two successive values
    agree to `tol`.

    Raises:
        ConvergenceError:
            No agreement up to `max_order` nodes per interval.
    """
    order = start_order
    previous = fredholm_det(build_operator(spec, J, order, form, route))
    difference = np.inf
    while order < max_order:
        order *= 2
        current = fredholm_det(build_operator(spec, J, order, form, route))
        difference = abs(current - previous)
        log.debug(
            f'Fredholm determinant on {J.endpoints} at order {order}:'
            f' {current:.15g} (change {difference:.2e})')
        if difference <= tol:
            return GapEstimateIe(value=current, error=difference, order=order)
        previous = current
    raise ConvergenceError(max_order, difference)


def gap_probability(
        spec: EnsembleSpecIe,
        s: float,
        route: QRouteEnum = QRouteEnum.AUTO) -> float:
    """E(lambda; (0, s))."""
    validate_range(s, 's', min_value=0.0)
    if s == 0:
        return 1.0
    return gap_estimate(spec, IntervalUnionIe.from_gap(s), route=route).value


def log_det_derivative(
        spec: EnsembleSpecIe,
        s: float,
        h: float | None = None,
        route: QRouteEnum = QRouteEnum.AUTO) -> float:
    """s d/ds log det(1 - lambda K_(0,s)) by a five-point central difference.

    All four determinants use the order accepted at s so that the difference
    sees one discretization.
    """
    if spec.lam == 0:
        return 0.0
    h = 1e-3 * s if h is None else h
    if h < 1e-6 * s:
        log.warning(
            f'Step h={h:.2e} is small against s={s}, the difference of'
            ' log determinants may cancel')
    validate_range(s - 2 * h, 's - 2h', min_value=0.0, min_inclusive=False)

    order = gap_estimate(spec, IntervalUnionIe.from_gap(s), route=route).order

    def log_det(point: float) -> float:
        op = build_operator(
            spec, IntervalUnionIe.from_gap(point), order, route=route)
        return fredholm_log_det(op)[1]

    derivative = (
        -log_det(s + 2 * h) + 8 * log_det(s + h)
        - 8 * log_det(s - h) + log_det(s - 2 * h)) / (12 * h)
    return s * derivative


def hole_probabilities(
        spec: EnsembleSpecIe,
        J: IntervalUnionIe,
        k_max: int,
        order: int | None = None) -> list[float]:
    """E(k; J), probability of exactly k points in J, for k <= k_max.

    With mu_i the eigenvalues of the discretized kernel,
    prod_i (1 - lambda mu_i) = sum_k (1 - lambda)^k E(k; J).
    """
    if order is None:
        order = gap_estimate(spec.with_lam(1.0), J).order
    mu = nystrom_eigenvalues(build_operator(spec.with_lam(1.0), J, order))
    coefficients = np.zeros(k_max + 1, dtype=complex)
    coefficients[0] = 1.0
    for m in mu:
        shifted = np.concatenate([[0.0], coefficients[:-1]])
        coefficients = (1 - m) * coefficients + m * shifted
    return [float(c.real) for c in coefficients]
