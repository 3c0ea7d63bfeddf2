from dataclasses import dataclass, field

import numpy as np

from ginigap.core.ie.ie import Ie
from .primary_state_ie import PrimaryStateIe


@dataclass
class TrajectoryIe(Ie):
    """States of one integration at the requested points.

    Attributes:
        states: One state per requested s, increasing.
        max_drift: Largest relative drift of the monitored integrals.
        step_count: Accepted steps over the whole run.
    """
    states: list[PrimaryStateIe]
    max_drift: float = 0.0
    step_count: int = field(default=0)

    @property
    def s(self) -> np.ndarray:
        return np.array([state.s for state in self.states])

    @property
    def log_tau(self) -> np.ndarray:
        return np.array([state.log_tau for state in self.states])

    @property
    def gap(self) -> np.ndarray:
        return np.exp(self.log_tau)
