from dataclasses import dataclass

from ginigap.core.ie.ie import Ie
from ginigap.core.validation import validate, validate_range


@dataclass
class SeriesTruncationIe(Ie):
    """Controls how far an infinite hypergeometric series is summed."""
    max_terms: int = 2000
    rel_tol: float = 1e-17

    def __post_init__(self) -> None:
        validate(self.max_terms, int, 'Max terms', strict=True)
        validate(self.rel_tol, float, 'Relative tolerance')
        validate_range(self.max_terms, 'Max terms', min_value=1)
        validate_range(
            self.rel_tol, 'Relative tolerance',
            min_value=0.0, max_value=1.0,
            min_inclusive=False, max_inclusive=False)
