from ginigap.core.error.error import (
    ConfigError, NumericalError, VerificationError)


class DimensionOverflowError(NumericalError):
    def __init__(
            self,
            dimension: int,
            max_dimension: int,
            message: str | None = None,
            status_code: int | None = None) -> None:
        super().__init__(message, status_code)

        if message is None:
            self.message = \
                f'Matrix dimension n + max(nu) = {dimension} exceeds' \
                f' {max_dimension}'


class NonIntegerNuError(ConfigError):
    def __init__(
            self,
            nu: list[float],
            message: str | None = None,
            status_code: int | None = None) -> None:
        super().__init__(message, status_code)

        if message is None:
            self.message = \
                f'Sampling needs integer matrix size offsets, got nu={nu}'


class NormalizationLockError(VerificationError):
    def __init__(
            self,
            mean: float,
            band: float,
            message: str | None = None,
            status_code: int | None = None) -> None:
        super().__init__(message, status_code)

        if message is None:
            self.message = \
                f'Sample mean {mean:.6f} of the one by one law is outside' \
                f' 1 +- {band:.6f}, entry normalization is broken'
