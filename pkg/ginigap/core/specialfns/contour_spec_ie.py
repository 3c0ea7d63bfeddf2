from dataclasses import dataclass

from ginigap.core.ie.ie import Ie
from ginigap.core.validation import validate_range
from .specialfns_error import ContourError


@dataclass
class ContourSpecIe(Ie):
    """Vertical integration lines for the Mellin-Barnes integral of Q_k.

    Points x >= 1 are integrated along Re t = abscissa. Points x < 1 use the
    line at `pole_offset` right of the rightmost pole -min(nu_1..nu_M), so
    the size of x^{-t} follows the x^{nu_min} decay of Q_k and relative
    accuracy survives as x -> 0.

    `half_height=None` picks the truncation automatically where the integrand
    has decayed by 32.3 e-folds (below 1e-14 relative). Node count is the
    starting trapezoid count, doubled until two successive values agree.
    """
    abscissa: float = 0.5
    pole_offset: float = 0.25
    half_height: float | None = None
    node_count: int = 64
    agreement: float = 1e-11
    max_node_count: int = 2**16

    def __post_init__(self) -> None:
        if self.abscissa <= 0:
            raise ContourError(
                f'Contour abscissa {self.abscissa} should be positive, the'
                ' line would pass through or left of the gamma poles')
        if not 0 < self.pole_offset < 1:
            raise ContourError(
                f'Pole offset {self.pole_offset} should lie in (0, 1)')
        if self.half_height is not None:
            validate_range(
                self.half_height, 'Half height',
                min_value=0.0, min_inclusive=False)
        validate_range(self.node_count, 'Node count', min_value=8)
        validate_range(
            self.max_node_count, 'Max node count', min_value=self.node_count)
