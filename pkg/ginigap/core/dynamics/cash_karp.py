"""Cash-Karp 5(4) embedded Runge-Kutta pair with local extrapolation."""
from typing import Callable

import numpy as np

from .dynamics_error import StepSizeError

NODES = np.array([0.0, 1 / 5, 3 / 10, 3 / 5, 1.0, 7 / 8])
STAGES = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [3 / 10, -9 / 10, 6 / 5],
    [-11 / 54, 5 / 2, -70 / 27, 35 / 27],
    [1631 / 55296, 175 / 512, 575 / 13824, 44275 / 110592, 253 / 4096],
]
WEIGHTS = np.array([37 / 378, 0.0, 250 / 621, 125 / 594, 0.0, 512 / 1771])
# Fifth minus fourth order weights
ERROR_WEIGHTS = np.array([
    -277 / 64512, 0.0, 6925 / 370944, -6925 / 202752, -277 / 14336,
    277 / 7084])
ORDER = 5
MIN_STEP_RATIO = 1e-14

RhsFn = Callable[[float, np.ndarray], np.ndarray]


def cash_karp_step(
        f: RhsFn,
        s: float,
        y: np.ndarray,
        h: float) -> tuple[np.ndarray, np.ndarray]:
    """One step of size h; returns the fifth order solution and the local
    error estimate."""
    k = []
    for node, row in zip(NODES, STAGES):
        increment = sum((a * ki for a, ki in zip(row, k)), np.zeros_like(y))
        k.append(f(s + node * h, y + h * increment))
    k = np.stack(k)
    return y + h * (WEIGHTS @ k), h * (ERROR_WEIGHTS @ k)


def error_ratio(
        y: np.ndarray,
        y_new: np.ndarray,
        error: np.ndarray,
        tol: float) -> float:
    """Largest error relative to tol * max(1, |y|); accept when <= 1."""
    scale = tol * np.maximum(1.0, np.maximum(np.abs(y), np.abs(y_new)))
    return float(np.max(np.abs(error) / scale))


def next_step(h: float, ratio: float) -> float:
    if ratio == 0:
        return 5 * h
    factor = 0.9 * ratio**(-1 / ORDER)
    return h * min(5.0, max(0.2, factor))


def advance(
        f: RhsFn,
        s: float,
        y: np.ndarray,
        s_end: float,
        tol: float,
        h: float | None = None,
        on_accept: Callable[[float, np.ndarray], None] | None = None
        ) -> tuple[np.ndarray, float, int]:
    """Adaptive integration from s to s_end, landing on s_end exactly.

    Returns:
        Solution at s_end, the step proposed for continuing and the number of
        accepted steps.

    Raises:
        StepSizeError:
            Step below MIN_STEP_RATIO * s.
    """
    proposed = 1e-2 * s if h is None else h
    steps = 0
    while s < s_end:
        remaining = s_end - s
        clipped = proposed >= remaining
        h = remaining if clipped else proposed
        y_new, error = cash_karp_step(f, s, y, h)
        ratio = error_ratio(y, y_new, error, tol)
        if not np.isfinite(ratio):
            proposed = 0.2 * h
        elif ratio <= 1:
            s = s_end if clipped else s + h
            y = y_new
            steps += 1
            if on_accept is not None:
                on_accept(s, y)
            following = next_step(h, ratio)
            proposed = max(proposed, following) if clipped else following
            continue
        else:
            proposed = next_step(h, ratio)
        if proposed < MIN_STEP_RATIO * max(s, 1.0):
            raise StepSizeError(s, proposed)
    return y, proposed, steps
