import numpy as np

from .alpha_coeffs_ie import AlphaCoeffsIe


def elementary_symmetric(k: int, nu: list[float] | np.ndarray) -> float:
    """e_k(nu_1..nu_M), read off prod_i (1 + nu_i t); zero for k > M."""
    nu = list(nu)
    if k < 0 or k > len(nu):
        return 0.0
    # coefficients of prod (t + nu_i), highest power first
    coefficients = np.poly(-np.array(nu, dtype=float)) if nu else [1.0]
    return float(coefficients[k])


def elementary_symmetric_all(nu: list[float] | np.ndarray) -> np.ndarray:
    """Array [e_0, ..., e_M]."""
    nu = list(nu)
    if not nu:
        return np.ones(1)
    return np.asarray(np.poly(-np.array(nu, dtype=float)), dtype=float)


def alpha_coeffs(nu: list[float] | np.ndarray) -> AlphaCoeffsIe:
    e = elementary_symmetric_all(nu)
    M = len(e) - 1
    return AlphaCoeffsIe([float((-1)**i * e[M - i]) for i in range(M + 1)])
