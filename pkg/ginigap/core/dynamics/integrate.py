import numpy as np

from ginigap.core.specialfns.ensemble_spec_ie import EnsembleSpecIe
from ginigap.core.validation import validate_range
from ginigap.tools.log import log
from .cash_karp import advance
from .dynamics_error import DriftError
from .flow import vector_rhs
from .invariants import conserved_drift, conserved_quantities
from .primary_state_ie import PrimaryStateIe
from .seeding import SEED_POINT, initial_state
from .seeding_enum import SeedingEnum
from .trajectory_ie import TrajectoryIe

DEFAULT_TOL = 1e-10
# Abort when a monitored integral drifts beyond DRIFT_BUDGET * tol
DRIFT_BUDGET = 100.0


def integrate_through(
        state: PrimaryStateIe,
        spec: EnsembleSpecIe,
        s_points: list[float] | np.ndarray,
        tol: float = DEFAULT_TOL,
        drift_budget: float = DRIFT_BUDGET) -> TrajectoryIe:
    """Integrate from `state` and record the state at every point of
    `s_points`, landing on each exactly.

    log tau advances with the flow as the integral of (n eta_0 + eta_1)/t.

    Raises:
        StepSizeError:
            Step collapse.
        DriftError:
            A conserved quantity drifted beyond drift_budget * tol.
    """
    reference = conserved_quantities(state, spec)
    budget = drift_budget * tol
    worst = 0.0

    def monitor(s: float, vector: np.ndarray) -> None:
        nonlocal worst
        current = PrimaryStateIe.from_vector(s, vector, state.ln_scale)
        for name, drift in conserved_drift(current, spec, reference).items():
            worst = max(worst, drift)
            if drift > budget:
                raise DriftError(s, name, drift, budget)

    def f(s: float, vector: np.ndarray) -> np.ndarray:
        return vector_rhs(s, vector, spec.n)

    s = state.s
    vector = state.to_vector()
    h = None
    states = []
    total = 0
    for point in s_points:
        validate_range(point, 's', min_value=s)
        vector, h, steps = advance(f, s, vector, point, tol, h, monitor)
        total += steps
        s = float(point)
        states.append(PrimaryStateIe.from_vector(s, vector, state.ln_scale))

    log.debug(
        f'Integrated M={spec.M}, n={spec.n} from s={state.s:.3g} to'
        f' s={s:.6g} in {total} steps, max drift {worst:.2e}')
    return TrajectoryIe(states=states, max_drift=worst, step_count=total)


def integrate(
        state: PrimaryStateIe,
        spec: EnsembleSpecIe,
        s_target: float,
        tol: float = DEFAULT_TOL,
        drift_budget: float = DRIFT_BUDGET) -> PrimaryStateIe:
    validate_range(
        s_target, 's_target', min_value=state.s, min_inclusive=False)
    return integrate_through(
        state, spec, [s_target], tol, drift_budget).states[-1]


def gap_by_dynamics(
        spec: EnsembleSpecIe,
        s_grid: list[float] | np.ndarray,
        tol: float = DEFAULT_TOL,
        s0: float = SEED_POINT,
        seeding: SeedingEnum = SeedingEnum.AUTO) -> TrajectoryIe:
    """Gap probabilities exp(log tau(s)) on an increasing positive grid.

    The flow is seeded at min(s0, s_grid[0]).
    """
    s_grid = [float(s) for s in s_grid]
    validate_range(s_grid[0], 's', min_value=0.0, min_inclusive=False)
    start = initial_state(spec, min(s0, s_grid[0]), seeding)
    points = [s for s in s_grid if s > start.s]
    trajectory = integrate_through(start, spec, points, tol)
    if len(points) < len(s_grid):
        trajectory.states.insert(0, start)
    return trajectory
