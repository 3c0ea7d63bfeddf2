"""Initial values of the primary variables at a small s0.

On (0, s0) the operator K is the rank-n sum of p_k(x) q_k(y), so both
resolvents reduce to n x n linear systems:

    (1 - K)^{-1} phi_j = phi_j + sum_k p_k c_k,   (I - G) c = b,
    (1 - K')^{-1} psi_j = psi_j + sum_k q_k d_k,  (I - G^T) d = b',

with G_kl = int q_k p_l, b_k = int q_k phi_j, b'_k = int p_k psi_j, and
log tau(s0) = log det(I - G). The series route does every integral termwise
on generalized power series; the numeric route solves the Nystrom system.
"""
import numpy as np

from ginigap.core.fredholm.gap import gap_estimate
from ginigap.core.fredholm.interval_union_ie import IntervalUnionIe
from ginigap.core.fredholm.nystrom import (
    build_operator, fredholm_log_det, nystrom_interpolate, resolvent_apply)
from ginigap.core.kernel.kernel import phi_rows, psi_rows
from ginigap.core.kernel.symmetric import (
    alpha_coeffs, elementary_symmetric_all)
from ginigap.core.specialfns.biorthogonal import (
    ln_normalization, p_series, q_series)
from ginigap.core.specialfns.ensemble_spec_ie import EnsembleSpecIe
from ginigap.core.specialfns.series_expansion_ie import SeriesExpansionIe
from ginigap.core.specialfns.series_truncation_ie import SeriesTruncationIe
from ginigap.core.specialfns.specialfns_error import GenericityError
from ginigap.core.validation import validate_range
from ginigap.tools.log import log
from .primary_state_ie import PrimaryStateIe
from .seeding_enum import SeedingEnum

SEED_POINT = 1e-3
SERIES_SEED_LIMIT = 1.0


def _state_from_moments(
        spec: EnsembleSpecIe,
        s0: float,
        u: np.ndarray,
        v: np.ndarray,
        V: np.ndarray,
        log_tau: float) -> PrimaryStateIe:
    """xi and eta from the moments V_ij = int phi_i (1 - K')^{-1} psi_j."""
    M, n = spec.M, spec.n
    sign = (-1)**M
    e = elementary_symmetric_all(spec.nu)
    xi = np.array([
        sign * (n * V[0, j] + V[1, j] - (-1)**j * e[M + 1 - j])
        for j in range(M + 1)])
    eta = sign * V[:, M]
    return PrimaryStateIe(
        s=s0, u=u, v=v, xi=xi, eta=eta, log_tau=log_tau,
        ln_scale=ln_normalization(spec, n))


def _phi_psi_series(
        spec: EnsembleSpecIe,
        s0: float,
        trunc: SeriesTruncationIe | None
        ) -> tuple[list[SeriesExpansionIe], list[SeriesExpansionIe]]:
    alpha = alpha_coeffs(spec.nu_tail).alpha
    p_n = p_series(spec, spec.n)
    q_n = q_series(spec, spec.n, s0, trunc=trunc)
    q_deltas = [q_n.delta(i) for i in range(spec.M + 1)]

    phis = [p_n.delta(j).scale((-1)**(j + 1)) for j in range(spec.M + 1)]
    psis = []
    for j in range(spec.M + 1):
        row = SeriesExpansionIe.zero()
        for i in range(spec.M - j + 1):
            row = row + q_deltas[i].scale(alpha[i + j])
        if j == 0:
            row = row - q_n.shift(1.0)
        psis.append(row)
    return phis, psis


def initial_state_series(
        spec: EnsembleSpecIe,
        s0: float = SEED_POINT,
        trunc: SeriesTruncationIe | None = None) -> PrimaryStateIe:
    """Seed by closed-form integration of the small-s series.

    Raises:
        GenericityError:
            Several factors with non-generic nu; their series carry
            logarithms.
        RangeValidationError:
            s0 outside (0, SERIES_SEED_LIMIT].
    """
    validate_range(
        s0, 's0', min_value=0.0, max_value=SERIES_SEED_LIMIT,
        min_inclusive=False)
    if spec.M >= 2 and not spec.is_generic:
        raise GenericityError(list(spec.nu))
    n = spec.n

    def integral(f: SeriesExpansionIe, g: SeriesExpansionIe) -> float:
        return float((f * g).integrate().evaluate(s0))

    p = [p_series(spec, k) for k in range(n)]
    q = [q_series(spec, k, s0, trunc=trunc) for k in range(n)]
    phis, psis = _phi_psi_series(spec, s0, trunc)

    G = np.array([[integral(q_k, p_l) for p_l in p] for q_k in q])
    b = np.array([[integral(q_k, phi) for phi in phis] for q_k in q])
    b_t = np.array([[integral(p_k, psi) for psi in psis] for p_k in p])
    system = np.eye(n) - G
    c = np.linalg.solve(system, b)
    d = np.linalg.solve(system.T, b_t)

    p_at = np.array([f.evaluate(s0) for f in p])
    q_at = np.array([f.evaluate(s0) for f in q])
    u = np.array([phi.evaluate(s0) for phi in phis]) + p_at @ c
    v = np.array([psi.evaluate(s0) for psi in psis]) + q_at @ d

    phi_psi = np.array([[integral(f, g) for g in psis] for f in phis])
    phi_q = np.array([[integral(f, q_k) for q_k in q] for f in phis])
    V = phi_psi + phi_q @ d

    sign, log_tau = np.linalg.slogdet(system)
    if sign <= 0:
        log.warning(
            f'det(I - G) has sign {sign} at s0={s0}, the gap probability'
            ' series is not reliable there')
    return _state_from_moments(spec, s0, u, v, V, float(log_tau))


def initial_state_numeric(
        spec: EnsembleSpecIe,
        s0: float = SEED_POINT) -> PrimaryStateIe:
    """Seed by Nystrom solves of both resolvent equations on (0, s0)."""
    validate_range(s0, 's0', min_value=0.0, min_inclusive=False)
    J = IntervalUnionIe.from_gap(s0)
    op = build_operator(spec, J, gap_estimate(spec, J).order)
    lam = spec.lam

    phi_nodes = phi_rows(spec, op.nodes)[0]
    psi_nodes = psi_rows(spec, op.nodes)[0]
    solved_phi = resolvent_apply(op, lam, phi_nodes.T)
    solved_psi = resolvent_apply(op, lam, psi_nodes.T, transpose=True)

    point = np.array([s0])
    u = nystrom_interpolate(
        op, lam, phi_rows(spec, point)[0].T, solved_phi, point)[0]
    v = nystrom_interpolate(
        op, lam, psi_rows(spec, point)[0].T, solved_psi, point,
        transpose=True)[0]
    V = (phi_nodes * op.weights[None, :]) @ solved_psi

    sign, log_tau = fredholm_log_det(op)
    if sign <= 0:
        log.warning(f'Fredholm determinant has sign {sign} at s0={s0}')
    return _state_from_moments(spec, s0, u, v, V, log_tau)


def initial_state(
        spec: EnsembleSpecIe,
        s0: float = SEED_POINT,
        seeding: SeedingEnum = SeedingEnum.AUTO) -> PrimaryStateIe:
    match seeding:
        case SeedingEnum.SERIES:
            return initial_state_series(spec, s0)
        case SeedingEnum.NUMERIC:
            return initial_state_numeric(spec, s0)
        case SeedingEnum.AUTO:
            if spec.M >= 2 and not spec.is_generic:
                log.warning(
                    f'Series seeding unavailable for nu={spec.nu}, falling'
                    ' back to Nystrom seeding')
                return initial_state_numeric(spec, s0)
            return initial_state_series(spec, s0)
        case _:
            raise ValueError(f'Unrecognized seeding {seeding}')
