from dataclasses import dataclass

from ginigap.core.ie.ie import Ie


@dataclass
class ChiJetIe(Ie):
    """chi_0 with three derivatives and chi_1 with two at one s."""
    s: float
    chi_0: tuple[float, float, float, float]
    chi_1: tuple[float, float, float]
