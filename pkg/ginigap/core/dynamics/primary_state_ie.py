from dataclasses import dataclass, field

import numpy as np

from ginigap.core.ie.ie import Ie


@dataclass
class PrimaryStateIe(Ie):
    """Primary variables of the gap flow on J = (0, s).

    The flow keeps x_j, y_j purely imaginary and xi_j, eta_j real, so only
    u_j = Im x_j and v_j = Im y_j are stored. Values of u and v belong to the
    scaled pair: u_true = u * exp(ln_scale), v_true = v * exp(-ln_scale).

    Attributes:
        s: Right end of the gap interval.
        u: M+1 values Im x_j(s).
        v: M+1 values Im y_j(s).
        xi: M+1 values xi_j(s).
        eta: M+1 values eta_j(s).
        log_tau: log det(1 - lambda K) on (0, s).
        ln_scale: log N_n of the scaled pair.
    """
    s: float
    u: np.ndarray
    v: np.ndarray
    xi: np.ndarray
    eta: np.ndarray
    log_tau: float = 0.0
    ln_scale: float = field(default=0.0)
    FORMATTED_NAME = 'state'

    def __post_init__(self) -> None:
        self.s = float(self.s)
        self.u = np.asarray(self.u, dtype=float)
        self.v = np.asarray(self.v, dtype=float)
        self.xi = np.asarray(self.xi, dtype=float)
        self.eta = np.asarray(self.eta, dtype=float)
        self.log_tau = float(self.log_tau)
        sizes = {len(self.u), len(self.v), len(self.xi), len(self.eta)}
        if len(sizes) != 1:
            raise ValueError('State components should have equal lengths')

    @property
    def M(self) -> int:
        return len(self.u) - 1

    @property
    def gap(self) -> float:
        return float(np.exp(self.log_tau))

    @property
    def orthogonality(self) -> float:
        return float(np.dot(self.u, self.v))

    def to_vector(self) -> np.ndarray:
        return np.concatenate(
            [self.u, self.v, self.xi, self.eta, [self.log_tau]])

    @classmethod
    def from_vector(
            cls,
            s: float,
            vector: np.ndarray,
            ln_scale: float = 0.0) -> 'PrimaryStateIe':
        u, v, xi, eta = np.split(vector[:-1], 4)
        return cls(
            s=s, u=u, v=v, xi=xi, eta=eta, log_tau=float(vector[-1]),
            ln_scale=ln_scale)
