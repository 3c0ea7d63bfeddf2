from dataclasses import dataclass, field

import numpy as np

from ginigap.core.ie.ie import Ie

EXPONENT_MERGE_DISTANCE = 1e-12


@dataclass
class SeriesExpansionIe(Ie):
    """Generalized power series sum_i c_i s^{mu_i} with real exponents.

    Exponents are kept strictly increasing; coincident exponents are merged on
    construction.
    """
    exponents: np.ndarray
    coefficients: np.ndarray
    valid_radius_hint: float = field(default=np.inf)

    def __post_init__(self) -> None:
        exponents = np.asarray(self.exponents, dtype=float)
        coefficients = np.asarray(self.coefficients, dtype=float)
        if exponents.shape != coefficients.shape:
            raise ValueError(
                'Series exponents and coefficients should have same shape')

        order = np.argsort(exponents, kind='stable')
        exponents = exponents[order]
        coefficients = coefficients[order]

        if len(exponents):
            starts = np.flatnonzero(np.concatenate(
                [[True], np.diff(exponents) >= EXPONENT_MERGE_DISTANCE]))
            exponents = exponents[starts]
            coefficients = np.add.reduceat(coefficients, starts)

        self.exponents = exponents
        self.coefficients = coefficients

    @classmethod
    def zero(cls) -> 'SeriesExpansionIe':
        return cls(np.zeros(0), np.zeros(0))

    @property
    def leading_exponent(self) -> float:
        nonzero = self.exponents[self.coefficients != 0]
        return float(nonzero[0]) if len(nonzero) else np.inf

    def coefficient_of(self, exponent: float) -> float:
        close = np.abs(self.exponents - exponent) < EXPONENT_MERGE_DISTANCE
        return float(self.coefficients[close].sum())

    def evaluate(self, s: float | np.ndarray) -> float | np.ndarray:
        s_array = np.atleast_1d(np.asarray(s, dtype=float))
        with np.errstate(divide='ignore', invalid='ignore'):
            log_s = np.log(s_array)
            terms = self.coefficients[None, :] * np.exp(
                log_s[:, None] * self.exponents[None, :])
        # Avoid 0 * inf at s=0 for zero exponents
        terms[:, self.exponents == 0] = self.coefficients[
            self.exponents == 0][None, :]
        values = terms.sum(axis=1)
        if np.ndim(s) == 0:
            return float(values[0])
        return values

    def scale(self, factor: float) -> 'SeriesExpansionIe':
        return SeriesExpansionIe(
            self.exponents.copy(), factor * self.coefficients,
            self.valid_radius_hint)

    def shift(self, power: float) -> 'SeriesExpansionIe':
        """Multiply by s^power."""
        return SeriesExpansionIe(
            self.exponents + power, self.coefficients.copy(),
            self.valid_radius_hint)

    def derivative(self) -> 'SeriesExpansionIe':
        """d/ds termwise; the constant term drops out."""
        keep = self.exponents != 0
        return SeriesExpansionIe(
            self.exponents[keep] - 1,
            self.coefficients[keep] * self.exponents[keep],
            self.valid_radius_hint)

    def delta(self, times: int = 1) -> 'SeriesExpansionIe':
        """Apply s d/ds `times` times."""
        return SeriesExpansionIe(
            self.exponents.copy(),
            self.coefficients * self.exponents**times,
            self.valid_radius_hint)

    def integrate(self) -> 'SeriesExpansionIe':
        """Antiderivative vanishing at s=0."""
        if np.any(self.exponents <= -1):
            raise ValueError(
                'Series with exponents <= -1 is not integrable at zero')
        return SeriesExpansionIe(
            self.exponents + 1,
            self.coefficients / (self.exponents + 1),
            self.valid_radius_hint)

    def truncate(self, max_exponent: float) -> 'SeriesExpansionIe':
        keep = self.exponents <= max_exponent + EXPONENT_MERGE_DISTANCE
        return SeriesExpansionIe(
            self.exponents[keep], self.coefficients[keep],
            self.valid_radius_hint)

    def __add__(self, other: 'SeriesExpansionIe') -> 'SeriesExpansionIe':
        return SeriesExpansionIe(
            np.concatenate([self.exponents, other.exponents]),
            np.concatenate([self.coefficients, other.coefficients]),
            min(self.valid_radius_hint, other.valid_radius_hint))

    def __sub__(self, other: 'SeriesExpansionIe') -> 'SeriesExpansionIe':
        return self + other.scale(-1.0)

    def __mul__(
            self,
            other: 'SeriesExpansionIe | float') -> 'SeriesExpansionIe':
        if not isinstance(other, SeriesExpansionIe):
            return self.scale(float(other))
        exponents = np.add.outer(self.exponents, other.exponents).ravel()
        coefficients = np.multiply.outer(
            self.coefficients, other.coefficients).ravel()
        return SeriesExpansionIe(
            exponents, coefficients,
            min(self.valid_radius_hint, other.valid_radius_hint))

    __rmul__ = __mul__
