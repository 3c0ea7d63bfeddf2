from dataclasses import dataclass

from ginigap.core.ie.ie import Ie
from ginigap.core.validation.validation_error import RangeValidationError


@dataclass
class IntervalUnionIe(Ie):
    """Union of disjoint intervals (a_1, a_2) u ... u (a_{2m-1}, a_{2m}).

    Intervals must not touch: a_{2j} < a_{2j+1} strictly.
    """
    endpoints: list[float]

    def __post_init__(self) -> None:
        self.endpoints = [float(a) for a in self.endpoints]
        if len(self.endpoints) < 2 or len(self.endpoints) % 2:
            raise RangeValidationError(
                'Number of endpoints', len(self.endpoints), min_value=2,
                message='Interval union needs an even positive number of'
                f' endpoints, got {len(self.endpoints)}')
        if self.endpoints[0] < 0:
            raise RangeValidationError(
                'First endpoint', self.endpoints[0], min_value=0.0)
        for left, right in zip(self.endpoints[:-1], self.endpoints[1:]):
            if right <= left:
                raise RangeValidationError(
                    'Endpoint', right, min_value=left,
                    message='Interval endpoints should strictly increase,'
                    f' got {left} then {right}')

    @classmethod
    def from_gap(cls, s: float) -> 'IntervalUnionIe':
        """Single interval (0, s) next to the hard edge."""
        return cls([0.0, s])

    @property
    def intervals(self) -> list[tuple[float, float]]:
        return list(zip(self.endpoints[::2], self.endpoints[1::2]))

    @property
    def measure(self) -> float:
        return sum(b - a for a, b in self.intervals)
