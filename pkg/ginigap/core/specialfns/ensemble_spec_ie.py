from dataclasses import dataclass, replace

import numpy as np

from ginigap.core.ie.ie import Ie
from ginigap.core.validation import validate, validate_range
from ginigap.core.validation.validation_error import RangeValidationError

INTEGER_DISTANCE = 1e-6


def is_near_integer(value: float, distance: float = INTEGER_DISTANCE) -> bool:
    return abs(value - round(value)) < distance


@dataclass
class EnsembleSpecIe(Ie):
    """Product of M complex Ginibre matrices with sizes N_m = n + nu_m.

    Attributes:
        M: Number of factors.
        n: Matrix size N_0, also the number of squared singular values.
        nu: M+1 nonnegative size offsets, nu[0] = 0.
        lam: Generating-function parameter in [0, 1]; multiplies every Q.
    """
    M: int
    n: int
    nu: tuple[float, ...]
    lam: float = 1.0
    FORMATTED_NAME = 'ensemble'

    def __post_init__(self) -> None:
        validate(self.M, int, 'M', strict=True)
        validate(self.n, int, 'n', strict=True)
        validate_range(self.M, 'M', min_value=1)
        validate_range(self.n, 'n', min_value=1)
        validate_range(self.lam, 'lambda', min_value=0.0, max_value=1.0)
        self.nu = tuple(float(x) for x in self.nu)
        self.lam = float(self.lam)
        if len(self.nu) != self.M + 1:
            raise RangeValidationError(
                'len(nu)', len(self.nu), self.M + 1, self.M + 1)
        if self.nu[0] != 0.0:
            raise RangeValidationError('nu[0]', self.nu[0], 0.0, 0.0)
        for nu_m in self.nu:
            validate_range(nu_m, 'nu', min_value=0.0)

    @classmethod
    def create(
            cls, M: int, n: int, nu: list[float] | tuple[float, ...],
            lam: float = 1.0) -> 'EnsembleSpecIe':
        """Build spec accepting either M+1 offsets (with leading zero) or the
        M offsets nu_1..nu_M."""
        nu = tuple(nu)
        if len(nu) == M:
            nu = (0.0,) + nu
        return cls(M=M, n=n, nu=nu, lam=lam)

    @property
    def nu_tail(self) -> np.ndarray:
        """Offsets nu_1..nu_M."""
        return np.array(self.nu[1:], dtype=float)

    @property
    def nu_min(self) -> float:
        return float(self.nu_tail.min())

    @property
    def x_max(self) -> float:
        """Right end of the validity domain of the series evaluators."""
        return 4.0 * (self.n + max(self.nu))

    @property
    def is_generic(self) -> bool:
        """No nu_i and no nu_i - nu_j near an integer (i, j >= 1).

        Single factor specs are always generic: their residue series has one
        branch only.
        """
        if self.M == 1:
            return True
        tail = self.nu_tail
        for i, nu_i in enumerate(tail):
            if is_near_integer(nu_i):
                return False
            for nu_j in tail[i+1:]:
                if is_near_integer(nu_i - nu_j):
                    return False
        return True

    @property
    def has_integer_nu(self) -> bool:
        return all(is_near_integer(x) for x in self.nu)

    def with_lam(self, lam: float) -> 'EnsembleSpecIe':
        return replace(self, lam=lam)

    def with_n(self, n: int) -> 'EnsembleSpecIe':
        return replace(self, n=n)
