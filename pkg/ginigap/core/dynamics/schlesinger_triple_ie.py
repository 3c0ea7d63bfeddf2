from dataclasses import dataclass

import numpy as np

from ginigap.core.ie.ie import Ie


@dataclass
class SchlesingerTripleIe(Ie):
    """Residue matrices of the linear system whose isomonodromic deformation
    is the gap flow.

    Attributes:
        E: Constant matrix with a single nonzero (last) row.
        C: Matrix of the xi and eta variables.
        A2: Rank one residue matrix x (x) y = -u (x) v.
    """
    E: np.ndarray
    C: np.ndarray
    A2: np.ndarray

    @property
    def B(self) -> np.ndarray:
        """A2 - C, whose spectrum is an integral of the flow."""
        return self.A2 - self.C
