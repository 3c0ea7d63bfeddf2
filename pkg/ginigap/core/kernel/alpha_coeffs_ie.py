from dataclasses import dataclass

from ginigap.core.ie.ie import Ie


@dataclass
class AlphaCoeffsIe(Ie):
    """Coefficients alpha_i = (-1)^i e_{M-i}(nu_1..nu_M) of the integrable
    kernel numerator; alpha[M] = (-1)^M."""
    alpha: list[float]

    @property
    def M(self) -> int:
        return len(self.alpha) - 1

    def __getitem__(self, i: int) -> float:
        return self.alpha[i]
