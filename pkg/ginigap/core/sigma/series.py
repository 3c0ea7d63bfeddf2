"""Small-s expansions of sigma, chi_0, chi_1 and the gap probability.

Exactly the leading terms are emitted; `series_error_estimate` bounds the
first omitted order.
"""
import numpy as np
from scipy import special

from ginigap.core.specialfns.ensemble_spec_ie import EnsembleSpecIe
from ginigap.core.specialfns.gamma import pochhammer
from ginigap.core.specialfns.series_expansion_ie import SeriesExpansionIe
from ginigap.core.specialfns.specialfns_error import (
    FactorCountError, GenericityError)


def _require_one_factor(spec: EnsembleSpecIe) -> None:
    if spec.M != 1:
        raise FactorCountError(spec.M, (1,), 'Boundary expansion')


def _require_two_generic_factors(spec: EnsembleSpecIe) -> None:
    if spec.M != 2:
        raise FactorCountError(spec.M, (2,), 'Branch expansion')
    if not spec.is_generic:
        raise GenericityError(list(spec.nu))


def sigma_boundary_series(spec: EnsembleSpecIe) -> SeriesExpansionIe:
    """sigma = A s^{nu+1} (1 - (2n+nu)/(nu+2) s + c_2 s^2) for one factor,
    A = lambda (nu+1)_n / (Gamma(n) Gamma(nu+2))."""
    _require_one_factor(spec)
    n, nu = spec.n, spec.nu[1]
    leading = spec.lam * float(pochhammer(nu + 1, n)) \
        / (special.gamma(n) * special.gamma(nu + 2))
    c_1 = -(2 * n + nu) / (nu + 2)
    c_2 = (nu * (nu + 1)**2 + 2 * n * (n + nu) * (2 * nu + 3)) \
        / (2 * float(pochhammer(nu + 1, 3)))
    return SeriesExpansionIe(
        nu + 1 + np.arange(3.0), leading * np.array([1.0, c_1, c_2]))


def branch_amplitudes(spec: EnsembleSpecIe) -> tuple[float, float]:
    """alpha_0, beta_0: leading coefficients of chi_0 at s^{nu_1+1} and
    s^{nu_2+1}."""
    _require_two_generic_factors(spec)
    n = spec.n
    nu_1, nu_2 = spec.nu_tail
    denominator = special.gamma(n) * special.gamma(nu_1 + 1) \
        * special.gamma(nu_2 + 1)
    alpha = -spec.lam * float(pochhammer(nu_1 + 2, n - 1)) \
        * special.gamma(nu_2 - nu_1) / denominator
    beta = -spec.lam * float(pochhammer(nu_2 + 2, n - 1)) \
        * special.gamma(nu_1 - nu_2) / denominator
    return float(alpha), float(beta)


def _first_correction(n: int, nu_a: float, nu_b: float) -> float:
    """Relative s-coefficient of the nu_a branch of chi_0."""
    return (2 + 2 * nu_a + nu_a * nu_b + n * (2 * nu_b - nu_a)) \
        / ((nu_a + 2) * (nu_b + 1) * (1 + nu_a - nu_b))


def chi_series(
        spec: EnsembleSpecIe,
        order_cap: float | None = None
        ) -> tuple[SeriesExpansionIe, SeriesExpansionIe]:
    """Leading expansions of chi_0 and chi_1 for two generic factors.

    Terms with exponents above `order_cap` are dropped.

    Raises:
        GenericityError:
            nu_1, nu_2 or their difference near an integer.
    """
    alpha, beta = branch_amplitudes(spec)
    n = spec.n
    nu_1, nu_2 = spec.nu_tail
    cross = alpha * beta

    chi_0 = SeriesExpansionIe(
        [nu_1 + 1, nu_1 + 2, nu_2 + 1, nu_2 + 2, nu_1 + nu_2 + 2],
        [
            alpha, alpha * _first_correction(n, nu_1, nu_2),
            beta, beta * _first_correction(n, nu_2, nu_1),
            -cross * (nu_1 + nu_2 + 2) / ((nu_1 + 1) * (nu_2 + 1)),
        ])
    alpha_1 = (n - 1) * alpha / ((nu_1 + 2) * (nu_2 + 1))
    beta_1 = (n - 1) * beta / ((nu_1 + 1) * (nu_2 + 2))
    chi_1 = SeriesExpansionIe(
        [nu_1 + 2, nu_2 + 2, nu_1 + nu_2 + 3],
        [
            alpha_1, beta_1,
            -cross * (n - 1) * (nu_1 + nu_2 + 4)
            / ((nu_1 + 1) * (nu_1 + 2) * (nu_2 + 1) * (nu_2 + 2)),
        ])
    if order_cap is not None:
        return chi_0.truncate(order_cap), chi_1.truncate(order_cap)
    return chi_0, chi_1


def gap_series(spec: EnsembleSpecIe) -> SeriesExpansionIe:
    """Leading expansion of E(0; (0, s)).

    One factor: 1 - int_0^s sigma(t) dt / t over the boundary series.
    Two factors: the branch terms and the first cross term.
    """
    if spec.M == 1:
        sigma = sigma_boundary_series(spec)
        integrated = sigma.shift(-1.0).integrate().scale(-1.0)
        return SeriesExpansionIe([0.0], [1.0]) + integrated

    alpha, beta = branch_amplitudes(spec)
    n = spec.n
    nu_1, nu_2 = spec.nu_tail
    return SeriesExpansionIe(
        [0.0, nu_1 + 1, nu_1 + 2, nu_2 + 1, nu_2 + 2, nu_1 + nu_2 + 3],
        [
            1.0,
            alpha / (nu_1 + 1),
            alpha * _first_correction(n, nu_1, nu_2) / (nu_1 + 2),
            beta / (nu_2 + 1),
            beta * _first_correction(n, nu_2, nu_1) / (nu_2 + 2),
            -alpha * beta * (n - 1) * (nu_1 - nu_2)**2
            / ((nu_1 + 1) * (nu_2 + 1) * (nu_1 + 2) * (nu_2 + 2))**2,
        ])


def series_error_estimate(spec: EnsembleSpecIe, s: float) -> float:
    """Size of the first omitted orders of `gap_series` at s: two more powers
    of s on every branch and the square of the leading branch terms."""
    series = gap_series(spec)
    leading = series - SeriesExpansionIe([0.0], [1.0])
    branches = np.abs(leading.coefficients) * s**leading.exponents
    return float(s**2 * branches.sum() + branches.max()**2)
