from dataclasses import dataclass

import numpy as np

from ginigap.core.ie.ie import Ie
from ginigap.core.kernel.kernel_form_enum import KernelFormEnum
from ginigap.core.specialfns.ensemble_spec_ie import EnsembleSpecIe
from ginigap.core.specialfns.q_route_enum import QRouteEnum
from .interval_union_ie import IntervalUnionIe


@dataclass
class NystromOperatorIe(Ie):
    """Discretized kernel on J with symmetric weighting
    matrix[i, j] = sqrt(w_i) K(x_i, x_j) sqrt(w_j).

    The matrix carries lambda = 1; `spec.lam` enters at solve time.
    """
    spec: EnsembleSpecIe
    J: IntervalUnionIe
    order: int
    nodes: np.ndarray
    weights: np.ndarray
    matrix: np.ndarray
    form: KernelFormEnum = KernelFormEnum.INTEGRABLE
    route: QRouteEnum = QRouteEnum.AUTO

    @property
    def lam(self) -> float:
        return self.spec.lam

    @property
    def size(self) -> int:
        return len(self.nodes)

    @property
    def root_weights(self) -> np.ndarray:
        return np.sqrt(self.weights)
