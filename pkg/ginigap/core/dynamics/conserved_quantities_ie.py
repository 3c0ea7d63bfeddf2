from dataclasses import dataclass

import numpy as np

from ginigap.core.ie.ie import Ie


@dataclass
class ConservedQuantitiesIe(Ie):
    """Integrals of the flow at one state.

    Attributes:
        orthogonality: sum_j u_j v_j, zero on true trajectories.
        hamiltonian: H at the state.
        hamiltonian_identity: H - (n eta_0 + eta_1), zero.
        char_poly: Coefficients of det(z - B), B = A2 - C, highest first.
        char_poly_residual:
            char_poly minus the polynomial with roots (0, nu_1..nu_M), None
            when nu_min = 0.
        first_integral:
            One factor only: xi_1 - n eta_0 - eta_1 + nu, zero.
        xi_relations:
            Two factors only: residuals of xi_2, xi_1, xi_0 expressed
            through chi_0 = n eta_0 + eta_1, chi_1 = n eta_1 + eta_2.
    """
    orthogonality: float
    hamiltonian: float
    hamiltonian_identity: float
    char_poly: np.ndarray
    char_poly_residual: np.ndarray | None = None
    first_integral: float | None = None
    xi_relations: np.ndarray | None = None

    def scaled_hamiltonian_identity(self) -> float:
        return abs(self.hamiltonian_identity) / max(1.0, abs(self.hamiltonian))

    def max_residual(self) -> float:
        values = [
            abs(self.orthogonality), self.scaled_hamiltonian_identity()]
        if self.char_poly_residual is not None:
            values.append(float(np.abs(self.char_poly_residual).max()))
        if self.first_integral is not None:
            values.append(abs(self.first_integral))
        if self.xi_relations is not None:
            values.append(float(np.abs(self.xi_relations).max()))
        return max(values)
