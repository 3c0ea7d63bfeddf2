"""Recurrences and differential equations of the biorthogonal pair, as
residual checks at sample points."""
import math

import numpy as np

from ginigap.core.specialfns.biorthogonal import p_deltas, q_deltas
from ginigap.core.specialfns.ensemble_spec_ie import EnsembleSpecIe
from ginigap.core.specialfns.gamma import pochhammer
from ginigap.core.specialfns.q_route_enum import QRouteEnum
from .symmetric import elementary_symmetric_all


def recurrence_coeff_a(spec: EnsembleSpecIe, k: int, m: int) -> float:
    """Coefficient a_{k,m} of x P_m = P_{m+1} + sum_k a_{k,m} P_{m-k}."""
    if k > m or k < 0 or m < 0:
        return 0.0
    front = math.prod(pochhammer(m - k + nu + 1, k) for nu in spec.nu)
    difference = sum(
        (-1)**j / (math.factorial(j) * math.factorial(k + 1 - j))
        * math.prod(m + 1 - j + nu for nu in spec.nu)
        for j in range(k + 2))
    return float(front * difference)


def _operator_rows(roots: list[float]) -> np.ndarray:
    """Coefficients c_i of prod_r (delta - r) = sum_i c_i delta^i, lowest
    power first."""
    return np.poly(np.array(roots, dtype=float))[::-1]


def _apply(coefficients: np.ndarray, rows: np.ndarray) -> np.ndarray:
    return sum(c * rows[i] for i, c in enumerate(coefficients))


def _relative(residual: np.ndarray, *terms: np.ndarray) -> float:
    scale = max(max(float(np.abs(t).max()) for t in terms), 1e-300)
    return float(np.abs(residual).max() / scale)


class RecurrenceChecker:
    """Residuals of the three-term, raising/lowering and differential
    relations for P_k and Q_k, k <= n, at sample points x.

    All rows are true (unscaled) values; keep n moderate.
    """
    def __init__(
            self,
            spec: EnsembleSpecIe,
            x: np.ndarray,
            route: QRouteEnum = QRouteEnum.AUTO,
            order: int = 3) -> None:
        self.spec = spec
        self.x = np.atleast_1d(np.asarray(x, dtype=float))
        self.order = order
        n, M = spec.n, spec.M
        # delta rows up to the order needed by the generalized recurrences
        j_max = max(M + 1, order)
        self.p = {
            k: p_deltas(spec, k, self.x, j_max, scaled=False)
            for k in range(-1, n + 2)
        }
        self.q = {
            k: q_deltas(spec, k, self.x, j_max, False, route)
            for k in range(-1, n + max(M, order) + 2)
        }

    def a(self, k: int, m: int) -> float:
        return recurrence_coeff_a(self.spec, k, m)

    def three_term_p(self) -> float:
        M, x = self.spec.M, self.x
        worst = 0.0
        for m in range(self.spec.n + 1):
            lhs = x * self.p[m][0]
            rhs = self.p[m + 1][0] + sum(
                self.a(k, m) * self.p[m - k][0]
                for k in range(min(M, m) + 1))
            worst = max(worst, _relative(lhs - rhs, lhs, rhs))
        return worst

    def three_term_q(self) -> float:
        M, x = self.spec.M, self.x
        worst = 0.0
        for m in range(self.spec.n + 1):
            lhs = x * self.q[m][0]
            rhs = self.q[m - 1][0] + sum(
                self.a(k, m + k) * self.q[m + k][0] for k in range(M + 1))
            worst = max(worst, _relative(lhs - rhs, lhs, rhs))
        return worst

    def lowering_p(self, m: int = 1) -> float:
        """prod_j (k-m+nu_j+1)_m P_{k-m} = (delta-k)_m P_k."""
        worst = 0.0
        for k in range(m, self.spec.n + 1):
            front = math.prod(
                pochhammer(k - m + nu + 1, m) for nu in self.spec.nu)
            lhs = front * self.p[k - m][0]
            operator = _operator_rows([k - r for r in range(m)])
            rhs = _apply(operator, self.p[k])
            worst = max(worst, _relative(lhs - rhs, lhs, rhs))
        return worst

    def raising_q(self, m: int = 1) -> float:
        """prod_j (k+nu_j+1)_m Q_{k+m} = (-1)^m (delta+k+1)_m Q_k."""
        worst = 0.0
        for k in range(self.spec.n + 1):
            front = math.prod(
                pochhammer(k + nu + 1, m) for nu in self.spec.nu)
            lhs = front * self.q[k + m][0]
            operator = _operator_rows([-(k + 1 + r) for r in range(m)])
            rhs = (-1)**m * _apply(operator, self.q[k])
            worst = max(worst, _relative(lhs - rhs, lhs, rhs))
        return worst

    def ode_p(self) -> float:
        """prod_i (delta + nu_i) P_k = x (delta - k) P_k."""
        worst = 0.0
        operator = _operator_rows([-nu for nu in self.spec.nu])
        for k in range(self.spec.n + 1):
            rows = self.p[k]
            lhs = _apply(operator, rows)
            rhs = self.x * (rows[1] - k * rows[0])
            worst = max(worst, _relative(lhs - rhs, lhs, rhs))
        return worst

    def ode_q(self) -> float:
        """prod_i (delta - nu_i) Q_k = (-1)^M x (delta + k + 1) Q_k."""
        worst = 0.0
        operator = _operator_rows(list(self.spec.nu))
        for k in range(self.spec.n + 1):
            rows = self.q[k]
            lhs = _apply(operator, rows)
            rhs = (-1)**self.spec.M * self.x * (rows[1] + (k + 1) * rows[0])
            worst = max(worst, _relative(lhs - rhs, lhs, rhs))
        return worst

    def _symmetric_sum(
            self, k: int, rows: np.ndarray, sign: int) -> np.ndarray:
        M = self.spec.M
        e = elementary_symmetric_all(self.spec.nu_tail)
        return sum(
            e[M - i - l] * k**l * sign**i * rows[i]
            for i in range(M + 1) for l in range(M - i + 1))

    def symmetric_p(self) -> float:
        """P_k - x P_{k-1} + sum e_{M-i-l} k^l delta^i P_{k-1} = 0."""
        worst = 0.0
        for k in range(1, self.spec.n + 1):
            terms = [
                self.p[k][0], self.x * self.p[k - 1][0],
                self._symmetric_sum(k, self.p[k - 1], 1)]
            residual = terms[0] - terms[1] + terms[2]
            worst = max(worst, _relative(residual, *terms))
        return worst

    def symmetric_q(self) -> float:
        """Q_{k-1} - x Q_k + sum e_{M-i-l} k^l (-delta)^i Q_k = 0."""
        worst = 0.0
        for k in range(1, self.spec.n + 1):
            terms = [
                self.q[k - 1][0], self.x * self.q[k][0],
                self._symmetric_sum(k, self.q[k], -1)]
            residual = terms[0] - terms[1] + terms[2]
            worst = max(worst, _relative(residual, *terms))
        return worst

    def residuals(self) -> dict[str, float]:
        result = {
            'three_term_p': self.three_term_p(),
            'three_term_q': self.three_term_q(),
            'ode_p': self.ode_p(),
            'ode_q': self.ode_q(),
            'symmetric_p': self.symmetric_p(),
            'symmetric_q': self.symmetric_q(),
        }
        for m in range(1, self.order + 1):
            result[f'lowering_p_{m}'] = self.lowering_p(m)
            result[f'raising_q_{m}'] = self.raising_q(m)
        return result


def recurrence_residuals(
        spec: EnsembleSpecIe,
        x: np.ndarray,
        route: QRouteEnum = QRouteEnum.AUTO,
        order: int = 3) -> dict[str, float]:
    return RecurrenceChecker(spec, x, route, order).residuals()
