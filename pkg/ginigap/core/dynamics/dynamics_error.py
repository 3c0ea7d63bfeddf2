from ginigap.core.error.error import NumericalError


class StepSizeError(NumericalError):
    def __init__(
            self,
            s: float,
            step: float,
            message: str | None = None,
            status_code: int | None = None) -> None:
        super().__init__(message, status_code)

        if message is None:
            self.message = \
                f'Integrator step collapsed to {step:.3e} at s={s:.6g}'


class DriftError(NumericalError):
    def __init__(
            self,
            s: float,
            quantity: str,
            drift: float,
            budget: float,
            message: str | None = None,
            status_code: int | None = None) -> None:
        super().__init__(message, status_code)

        if message is None:
            self.message = \
                f'Conserved quantity {quantity} drifted by {drift:.3e}' \
                f' at s={s:.6g}, budget is {budget:.3e}'


class TrajectoryDensityError(NumericalError):
    def __init__(
            self,
            point_count: int,
            message: str | None = None,
            status_code: int | None = None) -> None:
        super().__init__(message, status_code)

        if message is None:
            self.message = \
                'Finite differences need at least five uniformly spaced' \
                f' trajectory points, got {point_count}'
