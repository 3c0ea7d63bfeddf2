"""Biorthogonal pair P_k (polynomial) and Q_k (Meijer G weight function) of a
product of complex Ginibre matrices, with their x d/dx powers.

Two normalizations are served. True values follow the monic P_k. The scaled
pair p_k = P_k/N_k, q_k = N_k Q_k with N_k = prod_{j>=1} (nu_j+1)_k keeps every
product p_k q_k unchanged while staying inside double range for large k; the
kernel works with the scaled pair.
"""
import numpy as np
from scipy import special

from ginigap.tools.log import log
from .contour_spec_ie import ContourSpecIe
from .ensemble_spec_ie import EnsembleSpecIe
from .hypergeometric import compensated_sum, hyp_coefficients, hyp_terms
from .q_route_enum import QRouteEnum
from .series_expansion_ie import SeriesExpansionIe
from .series_truncation_ie import SeriesTruncationIe
from .specialfns_error import ContourError, GenericityError

# Integrand magnitude drop at the truncation point of the contour
CONTOUR_DECAY = 32.3
CONTOUR_SCAN_STEP = 0.5
CONTOUR_SCAN_LIMIT = 1e4
# Relative floor (to the integral of |integrand|) in the doubling criterion
CONTOUR_ABSOLUTE_FLOOR = 1e-4
# AUTO route uses the residue series for M >= 2 only on this x range
SERIES_AUTO_X_LIMIT = 1.0
# Largest x batch integrated as one matrix
CONTOUR_CHUNK = 256


def ln_normalization(spec: EnsembleSpecIe, k: int) -> float:
    """log N_k, the factor between true and scaled pairs."""
    tail = spec.nu_tail
    return float(np.sum(
        special.gammaln(tail + 1 + k) - special.gammaln(tail + 1)))


def _as_array(x: float | np.ndarray) -> np.ndarray:
    return np.atleast_1d(np.asarray(x, dtype=float))


def _restore_shape(
        values: np.ndarray, x: float | np.ndarray) -> float | np.ndarray:
    if np.ndim(x) == 0:
        return float(values[0])
    return values


def flag_precision(spec: EnsembleSpecIe, x: np.ndarray, what: str) -> None:
    if len(x) and x.max() > spec.x_max:
        log.warning(
            f'{what} evaluated at x={x.max():.4g} beyond the validity domain'
            f' x_max={spec.x_max:.4g}, precision may be lost')


def p_deltas(
        spec: EnsembleSpecIe,
        k: int,
        x: float | np.ndarray,
        j_max: int,
        scaled: bool = True) -> np.ndarray:
    """Rows delta^j P_k(x), j = 0..j_max, shape (j_max+1, len(x))."""
    x = _as_array(x)
    if k < 0:
        return np.zeros((j_max + 1, len(x)))

    terms = (-1)**k * hyp_terms([-k], list(spec.nu_tail + 1), x)
    if not scaled:
        terms = terms * np.exp(ln_normalization(spec, k))
    powers = np.arange(terms.shape[-1], dtype=float)

    return np.stack([
        compensated_sum(terms * powers**j) for j in range(j_max + 1)
    ])


def eval_P(
        spec: EnsembleSpecIe,
        k: int,
        x: float | np.ndarray,
        scaled: bool = False) -> float | np.ndarray:
    """Monic polynomial P_k(x) = (-1)^k N_k 1F_M(-k; 1+nu_1..1+nu_M; x)."""
    return _restore_shape(p_deltas(spec, k, x, 0, scaled)[0], x)


def p_series(
        spec: EnsembleSpecIe,
        k: int,
        scaled: bool = True) -> SeriesExpansionIe:
    if k < 0:
        return SeriesExpansionIe.zero()
    coefficients = (-1)**k * hyp_coefficients(
        [-k], list(spec.nu_tail + 1), 1.0, 1.0)
    if not scaled:
        coefficients = coefficients * np.exp(ln_normalization(spec, k))
    return SeriesExpansionIe(np.arange(k + 1, dtype=float), coefficients)


def _q_single_factor_deltas(
        spec: EnsembleSpecIe,
        k: int,
        x: np.ndarray,
        j_max: int,
        scaled: bool) -> np.ndarray:
    # Q_k = pref * x^nu e^{-x} F(x) with F = 1F1(-k; 1+nu; x), and
    # delta [x^nu e^{-x} G] = x^nu e^{-x} (delta + nu - x) G
    nu = spec.nu[1]
    f = hyp_coefficients([-k], [1 + nu], 1.0, 1.0)
    ln_pref = special.gammaln(nu + 1 + k) - 2 * special.gammaln(nu + 1) \
        - special.gammaln(k + 1)
    if not scaled:
        ln_pref -= ln_normalization(spec, k)
    pref = spec.lam * (-1)**k * np.exp(ln_pref)

    with np.errstate(divide='ignore'):
        weight = np.exp(nu * np.log(x) - x) if nu > 0 else np.exp(-x)

    rows = []
    g = f.copy()
    for j in range(j_max + 1):
        if j > 0:
            shifted = np.concatenate([g, [0.0]])
            lowered = np.concatenate([[0.0], g])
            g = (np.arange(len(shifted)) + nu) * shifted - lowered
        terms = g[None, :] * x[:, None]**np.arange(len(g))[None, :]
        rows.append(pref * weight * compensated_sum(terms))

    return np.stack(rows)


def _q_branches(
        spec: EnsembleSpecIe,
        k: int,
        scaled: bool) -> list[tuple[float, float, list[float], list[float]]]:
    """Residue branches (nu_j, prefactor, upper, lower) with
    Q_k = sum_j prefactor x^{nu_j} pFq(upper; lower; (-1)^M x)."""
    if not spec.is_generic:
        raise GenericityError(list(spec.nu))

    tail = spec.nu_tail
    ln_scale = 0.0 if scaled else -ln_normalization(spec, k)
    branches = []
    for j, nu_j in enumerate(tail):
        others = np.delete(tail, j)
        ln_pref = special.gammaln(nu_j + 1 + k) \
            - 2 * special.gammaln(nu_j + 1) - special.gammaln(k + 1) \
            + np.sum(special.gammaln(others - nu_j)
                     - special.gammaln(others + 1)) \
            + ln_scale
        sign = (-1)**k * np.prod(special.gammasgn(others - nu_j))
        branches.append((
            float(nu_j),
            float(spec.lam * sign * np.exp(ln_pref)),
            [float(nu_j + k + 1)],
            [float(nu_j + 1)] + list(1 + nu_j - others)))
    return branches


def _q_residue_deltas(
        spec: EnsembleSpecIe,
        k: int,
        x: np.ndarray,
        j_max: int,
        scaled: bool,
        trunc: SeriesTruncationIe | None) -> np.ndarray:
    rows = np.zeros((j_max + 1, len(x)))
    sign = (-1)**spec.M
    for nu_j, pref, upper, lower in _q_branches(spec, k, scaled):
        terms = hyp_terms(upper, lower, sign * x, trunc)
        exponents = nu_j + np.arange(terms.shape[-1])
        weight = pref * np.power(x, nu_j)
        for j in range(j_max + 1):
            rows[j] += weight * compensated_sum(terms * exponents**j)
    return rows


def q_series_deltas(
        spec: EnsembleSpecIe,
        k: int,
        x: float | np.ndarray,
        j_max: int,
        scaled: bool = True,
        trunc: SeriesTruncationIe | None = None) -> np.ndarray:
    """Rows delta^j Q_k(x) from the closed-form series, j = 0..j_max.

    Raises:
        GenericityError:
            M >= 2 and nu is (near) integer or has (near) integer differences.
    """
    x = _as_array(x)
    if k < 0 or spec.lam == 0:
        return np.zeros((j_max + 1, len(x)))
    if spec.M == 1:
        return _q_single_factor_deltas(spec, k, x, j_max, scaled)
    flag_precision(spec, x, f'Series of Q_{k}')
    return _q_residue_deltas(spec, k, x, j_max, scaled, trunc)


def eval_Q_series(
        spec: EnsembleSpecIe,
        k: int,
        x: float | np.ndarray,
        trunc: SeriesTruncationIe | None = None,
        scaled: bool = False) -> float | np.ndarray:
    return _restore_shape(
        q_series_deltas(spec, k, x, 0, scaled, trunc)[0], x)


def _contour_log_gamma(
        spec: EnsembleSpecIe,
        k: int,
        t: np.ndarray,
        scaled: bool) -> np.ndarray:
    # Gamma(t) / Gamma(t - k) = (t - 1)...(t - k) since nu_0 = 0
    tail = spec.nu_tail
    values = np.sum(
        special.loggamma(t[:, None] + tail[None, :]), axis=1)
    if k > 0:
        values = values + np.sum(
            np.log(t[:, None] - np.arange(1, k + 1)[None, :]), axis=1)
    if scaled:
        norm = special.gammaln(k + 1) + np.sum(special.gammaln(tail + 1))
    else:
        norm = np.sum(special.gammaln(k + np.array(spec.nu) + 1))
    return values - norm


def _contour_half_height(
        spec: EnsembleSpecIe,
        k: int,
        contour: ContourSpecIe,
        abscissa: float) -> float:
    if contour.half_height is not None:
        return contour.half_height

    best = -np.inf
    y = 0.0
    while y < CONTOUR_SCAN_LIMIT:
        value = _contour_log_gamma(
            spec, k, np.array([abscissa + 1j * y]), True)[0].real
        best = max(best, value)
        if value < best - CONTOUR_DECAY:
            return y
        y += CONTOUR_SCAN_STEP
    raise ContourError(
        f'Contour integrand for Q_{k} does not decay up to'
        f' Im t={CONTOUR_SCAN_LIMIT}')


def _contour_trapezoid(
        spec: EnsembleSpecIe,
        k: int,
        ln_x: np.ndarray,
        j_max: int,
        scaled: bool,
        abscissa: float,
        half_height: float,
        node_count: int) -> tuple[np.ndarray, np.ndarray, float]:
    y = np.linspace(0.0, half_height, node_count + 1)
    weights = np.full(node_count + 1, half_height / node_count)
    weights[[0, -1]] /= 2
    t = abscissa + 1j * y

    ln_g = _contour_log_gamma(spec, k, t, scaled)
    integrand = np.exp(ln_g[None, :] - t[None, :] * ln_x[:, None])
    rows = np.stack([
        (integrand * (-t[None, :])**j).real @ weights / np.pi
        for j in range(j_max + 1)
    ])
    tail = np.exp(ln_g[-1].real - ln_g.real.max())
    l1 = np.abs(integrand) @ weights / np.pi
    return rows, l1, float(tail)


def _contour_rows(
        spec: EnsembleSpecIe,
        k: int,
        x: np.ndarray,
        j_max: int,
        scaled: bool,
        contour: ContourSpecIe,
        abscissa: float) -> np.ndarray:
    ln_x = np.log(x)
    half_height = _contour_half_height(spec, k, contour, abscissa)
    node_count = contour.node_count
    previous, _, tail = _contour_trapezoid(
        spec, k, ln_x, j_max, scaled, abscissa, half_height, node_count)
    if tail > 1e-12:
        log.warning(
            f'Contour integrand for Q_{k} has relative tail {tail:.2e}'
            f' at half height {half_height}')

    while True:
        node_count *= 2
        current, l1, _ = _contour_trapezoid(
            spec, k, ln_x, j_max, scaled, abscissa, half_height, node_count)
        bound = contour.agreement * np.maximum(
            np.abs(current), CONTOUR_ABSOLUTE_FLOOR * l1[None, :])
        if np.all(np.abs(current - previous) <= bound):
            return current
        if node_count >= contour.max_node_count:
            change = float(np.max(np.abs(current - previous) / bound))
            raise ContourError(
                f'Contour integral of Q_{k} along Re t={abscissa:g} did not'
                f' settle within {node_count} nodes, last change is'
                f' {change:.2e} times the agreement bound')
        previous = current


def q_contour_deltas(
        spec: EnsembleSpecIe,
        k: int,
        x: float | np.ndarray,
        j_max: int,
        scaled: bool = True,
        contour: ContourSpecIe | None = None) -> np.ndarray:
    """Rows delta^j Q_k(x) from the Mellin-Barnes integral, j = 0..j_max.

    The gamma part of the integrand does not depend on x, so a whole x grid is
    integrated at once as one matrix per integration line. Trapezoid nodes
    double until two successive values agree.

    Raises:
        ContourError:
            Nonpositive x, a non-decaying integrand or an integral that does
            not settle within `contour.max_node_count` nodes.
    """
    contour = contour or ContourSpecIe()
    x = _as_array(x)
    if k < 0 or spec.lam == 0:
        return np.zeros((j_max + 1, len(x)))
    if np.any(x <= 0):
        raise ContourError('Contour route needs x > 0')

    if len(x) > CONTOUR_CHUNK:
        return np.concatenate([
            q_contour_deltas(spec, k, chunk, j_max, scaled, contour)
            for chunk in np.array_split(x, -(-len(x) // CONTOUR_CHUNK))
        ], axis=1)

    rows = np.zeros((j_max + 1, len(x)))
    near = x < 1.0
    for mask, abscissa in (
            (near, contour.pole_offset - spec.nu_min),
            (~near, contour.abscissa)):
        if np.any(mask):
            rows[:, mask] = _contour_rows(
                spec, k, x[mask], j_max, scaled, contour, abscissa)
    return spec.lam * rows


def eval_Q_contour(
        spec: EnsembleSpecIe,
        k: int,
        x: float | np.ndarray,
        contour: ContourSpecIe | None = None,
        scaled: bool = False) -> float | np.ndarray:
    return _restore_shape(
        q_contour_deltas(spec, k, x, 0, scaled, contour)[0], x)


def resolve_route(
        spec: EnsembleSpecIe,
        x: np.ndarray,
        route: QRouteEnum) -> QRouteEnum:
    """Concrete route for AUTO: the closed form for one factor, residue
    series for generic M >= 2 on small x, contour otherwise."""
    if route is not QRouteEnum.AUTO:
        return route
    if spec.M == 1:
        return QRouteEnum.SERIES
    if spec.is_generic and len(x) and x.max() <= SERIES_AUTO_X_LIMIT:
        return QRouteEnum.SERIES
    return QRouteEnum.CONTOUR


def q_deltas(
        spec: EnsembleSpecIe,
        k: int,
        x: float | np.ndarray,
        j_max: int,
        scaled: bool = True,
        route: QRouteEnum = QRouteEnum.AUTO,
        trunc: SeriesTruncationIe | None = None,
        contour: ContourSpecIe | None = None) -> np.ndarray:
    x = _as_array(x)
    match resolve_route(spec, x, route):
        case QRouteEnum.SERIES:
            return q_series_deltas(spec, k, x, j_max, scaled, trunc)
        case QRouteEnum.CONTOUR:
            return q_contour_deltas(spec, k, x, j_max, scaled, contour)
        case _:
            raise ValueError(f'Unrecognized route {route}')


def eval_Q(
        spec: EnsembleSpecIe,
        k: int,
        x: float | np.ndarray,
        route: QRouteEnum = QRouteEnum.AUTO,
        scaled: bool = False) -> float | np.ndarray:
    return _restore_shape(
        q_deltas(spec, k, x, 0, scaled, route)[0], x)


def delta_pow(
        f_kind: str,
        spec: EnsembleSpecIe,
        k: int,
        j: int,
        x: float | np.ndarray,
        route: QRouteEnum = QRouteEnum.AUTO,
        scaled: bool = False) -> float | np.ndarray:
    """(x d/dx)^j applied to P_k or Q_k, termwise on the defining series or
    with (-t)^j inserted under the contour integral."""
    match f_kind.upper():
        case 'P':
            rows = p_deltas(spec, k, x, j, scaled)
        case 'Q':
            rows = q_deltas(spec, k, x, j, scaled, route)
        case _:
            raise ValueError(f'Unrecognized function kind {f_kind}')
    return _restore_shape(rows[j], x)


def q_series(
        spec: EnsembleSpecIe,
        k: int,
        radius: float,
        scaled: bool = True,
        trunc: SeriesTruncationIe | None = None) -> SeriesExpansionIe:
    """Q_k as a generalized power series accurate on [0, radius].

    Raises:
        GenericityError:
            M >= 2 with non-generic nu.
    """
    if k < 0 or spec.lam == 0:
        return SeriesExpansionIe.zero()
    series = SeriesExpansionIe.zero()
    sign = (-1)**spec.M
    for nu_j, pref, upper, lower in _q_branches(spec, k, scaled):
        coefficients = hyp_coefficients(upper, lower, sign, radius, trunc)
        series = series + SeriesExpansionIe(
            nu_j + np.arange(len(coefficients), dtype=float),
            pref * coefficients, radius)
    return series
