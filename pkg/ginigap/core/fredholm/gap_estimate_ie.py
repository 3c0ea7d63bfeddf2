from dataclasses import dataclass

from ginigap.core.ie.ie import Ie


@dataclass
class GapEstimateIe(Ie):
    """Gap probability with the difference between the last two orders as
    error estimate."""
    value: float
    error: float
    order: int
