import numpy as np
from scipy import special

from .specialfns_error import PoleOfGammaError

POLE_DISTANCE = 1e-12


def is_gamma_pole(z: complex | float) -> bool:
    z = complex(z)
    return (
        abs(z.imag) < POLE_DISTANCE
        and z.real < POLE_DISTANCE
        and abs(z.real - round(z.real)) < POLE_DISTANCE)


def ln_gamma(z: complex | float) -> complex | float:
    """Principal branch of log Gamma.

    Real positive arguments give real output; anything else goes through the
    complex branch.

    Raises:
        PoleOfGammaError:
            z is within 1e-12 of a nonpositive integer.
    """
    if is_gamma_pole(z):
        raise PoleOfGammaError(z)
    if isinstance(z, (int, float, np.floating, np.integer)) and z > 0:
        return float(special.gammaln(z))
    return complex(special.loggamma(complex(z)))


def pochhammer(a: float | int, k: int) -> float | int:
    """Rising factorial (a)_k; exact for integer `a`."""
    if k < 0:
        raise ValueError(f'Pochhammer order should be nonnegative, got {k}')
    result: float | int = 1
    for i in range(k):
        result *= a + i
    return result
