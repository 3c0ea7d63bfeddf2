import numpy as np

from .series_truncation_ie import SeriesTruncationIe
from .specialfns_error import BadParameterError, TruncationError
from .gamma import is_gamma_pole


def compensated_sum(terms: np.ndarray) -> np.ndarray:
    """Neumaier summation along the last axis."""
    terms = np.asarray(terms)
    total = np.zeros(terms.shape[:-1], dtype=terms.dtype)
    compensation = np.zeros_like(total)

    for column in np.moveaxis(terms, -1, 0):
        updated = total + column
        compensation += np.where(
            np.abs(total) >= np.abs(column),
            (total - updated) + column,
            (column - updated) + total)
        total = updated

    return total + compensation


def terminating_order(a: list[float]) -> int | None:
    """Degree of a terminating series, i.e. -a_i for the largest
    nonpositive integer upper parameter."""
    orders = [
        int(round(-x)) for x in a if is_gamma_pole(x)
    ]
    return min(orders) if orders else None


def hyp_terms(
        a: list[float],
        b: list[float],
        z: np.ndarray | float,
        trunc: SeriesTruncationIe | None = None) -> np.ndarray:
    """Terms (a)_m/(b)_m z^m/m! of the generalized hypergeometric series.

    Returns:
        Array of shape (len(z), m_count). Terminating series stop at their
        degree; other series stop when both the term ratio has dropped
        below one and the last term is below `rel_tol` times the running
        magnitude of the sum for every z.

    Raises:
        BadParameterError:
            Some lower parameter is a nonpositive integer reached before the
            series terminates.
        TruncationError:
            Tolerance not reached within `max_terms`.
    """
    trunc = trunc or SeriesTruncationIe()
    z = np.atleast_1d(np.asarray(z, dtype=float))
    degree = terminating_order(a)

    for b_j in b:
        if is_gamma_pole(b_j):
            if degree is None or degree > -round(b_j):
                raise BadParameterError(
                    f'Lower parameter {b_j} is a nonpositive integer')

    columns = [np.ones_like(z)]
    magnitude = np.ones_like(z)
    m = 0
    while True:
        if degree is not None and m >= degree:
            break
        if m + 1 > trunc.max_terms:
            raise TruncationError(trunc.max_terms, trunc.rel_tol)

        ratio = np.prod([a_i + m for a_i in a]) \
            / (np.prod([b_j + m for b_j in b]) * (m + 1))
        column = columns[-1] * ratio * z
        columns.append(column)
        magnitude = np.maximum(magnitude, np.abs(column))
        m += 1

        if degree is None:
            decaying = abs(ratio) * np.abs(z) < 1
            small = np.abs(column) <= trunc.rel_tol * magnitude
            if np.all(decaying & small):
                break

    return np.stack(columns, axis=-1)


def hyp_pFq(
        a: list[float],
        b: list[float],
        z: float | np.ndarray,
        trunc: SeriesTruncationIe | None = None) -> float | np.ndarray:
    """Generalized hypergeometric function pFq(a; b; z) by compensated series
    summation.

    Scalar `z` gives a float, array `z` gives an array.
    """
    values = compensated_sum(hyp_terms(a, b, z, trunc))
    if np.ndim(z) == 0:
        return float(values[0])
    return values


def hyp_coefficients(
        a: list[float],
        b: list[float],
        scale: float,
        radius: float,
        trunc: SeriesTruncationIe | None = None) -> np.ndarray:
    """Coefficients c_m of x^m in pFq(a; b; scale*x), truncated so that the
    dropped tail is below `rel_tol` for 0 <= x <= radius."""
    trunc = trunc or SeriesTruncationIe()
    degree = terminating_order(a)
    coefficients = [1.0]
    magnitude = 1.0
    m = 0
    while True:
        if degree is not None and m >= degree:
            break
        if m + 1 > trunc.max_terms:
            raise TruncationError(trunc.max_terms, trunc.rel_tol)
        ratio = scale * np.prod([a_i + m for a_i in a]) \
            / (np.prod([b_j + m for b_j in b]) * (m + 1))
        coefficients.append(coefficients[-1] * ratio)
        m += 1
        term = abs(coefficients[-1]) * radius**m
        magnitude = max(magnitude, term)
        if (
                degree is None
                and abs(ratio) * radius < 1
                and term <= trunc.rel_tol * magnitude):
            break
    return np.array(coefficients, dtype=float)
