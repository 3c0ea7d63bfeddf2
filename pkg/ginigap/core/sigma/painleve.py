"""Painleve-type equations satisfied by the logarithmic derivative of the gap
probability, as residuals."""


def sigma_pv_terms(
        sigma: float,
        dsigma: float,
        d2sigma: float,
        s: float,
        n: int,
        nu: float) -> list[float]:
    """Left side first, then the right side terms of
    (s sigma'')^2 = 4 s sigma'^3 - 4 sigma sigma'^2 + sigma^2
                    + 2 (nu - s + 2n) sigma sigma'
                    + ((nu - s)^2 - 4 s n) sigma'^2."""
    return [
        (s * d2sigma)**2,
        4 * s * dsigma**3,
        -4 * sigma * dsigma**2,
        sigma**2,
        2 * (nu - s + 2 * n) * sigma * dsigma,
        ((nu - s)**2 - 4 * s * n) * dsigma**2,
    ]


def sigma_pv_residual(
        sigma: float,
        dsigma: float,
        d2sigma: float,
        s: float,
        n: int,
        nu: float) -> float:
    lhs, *rhs = sigma_pv_terms(sigma, dsigma, d2sigma, s, n, nu)
    return lhs - sum(rhs)


def chi_system_terms(
        chi_0: tuple[float, float, float, float],
        chi_1: tuple[float, float, float],
        s: float,
        n: int,
        nu_1: float,
        nu_2: float) -> tuple[list[float], list[float]]:
    """Terms of the coupled equations for chi_0 (through its third
    derivative) and chi_1 (through its second); each list sums to zero on
    solutions."""
    c, dc, ddc, dddc = chi_0
    k, dk, ddk = chi_1
    e_1, e_2 = nu_1 + nu_2, nu_1 * nu_2

    first = [
        dk * (3 * dk + 3 * s * ddc + 2 * dc * (3 * c - e_1)),
        dc * (s**2 * dddc + (1 - e_1) * s * ddc),
        c * dc * (3 * s * ddc + dc * (3 * c - 2 * e_1 - 1) - 1),
        (e_2 - s) * dc**2,
        3 * s * dc**3,
    ]
    second = [
        (n - 1) * dc**2 * (c - s * dc),
        dc**3 * (
            (1 + e_1 + e_2 - s - (2 + e_1) * c + c**2) * c + s**2 * ddc),
        dc**4 * (3 * s * c - s * (1 + e_1)),
        2 * k * (1 - dc) * dc**2,
        dk**2 * (dk + 3 * c * dc - e_1 * dc),
        s**2 * dc * ddc * ddk,
        dk * (
            dc**2 * (e_2 - s + 3 * c**2 + 3 * s * dc)
            - c * dc * (1 + (1 + 2 * e_1) * dc)
            - s**2 * ddc**2),
    ]
    return first, second


def chi_system_residuals(
        chi_0: tuple[float, float, float, float],
        chi_1: tuple[float, float, float],
        s: float,
        n: int,
        nu_1: float,
        nu_2: float) -> tuple[float, float]:
    first, second = chi_system_terms(chi_0, chi_1, s, n, nu_1, nu_2)
    return sum(first), sum(second)
