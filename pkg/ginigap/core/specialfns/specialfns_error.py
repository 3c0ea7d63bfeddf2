from ginigap.core.error.error import ConfigError, NumericalError


class PoleOfGammaError(NumericalError):
    def __init__(
            self,
            z: complex | float,
            message: str | None = None,
            status_code: int | None = None) -> None:
        super().__init__(message, status_code)

        if message is None:
            self.message = f'Gamma function has a pole at z={z}'


class TruncationError(NumericalError):
    def __init__(
            self,
            max_terms: int,
            rel_tol: float,
            message: str | None = None,
            status_code: int | None = None) -> None:
        super().__init__(message, status_code)

        if message is None:
            self.message = \
                f'Series did not reach relative tolerance {rel_tol}' \
                f' within {max_terms} terms'


class BadParameterError(NumericalError):
    pass


class ContourError(NumericalError):
    pass


class GenericityError(ConfigError):
    def __init__(
            self,
            nu: list[float],
            message: str | None = None,
            status_code: int | None = None) -> None:
        super().__init__(message, status_code)

        if message is None:
            self.message = \
                f'Parameters nu={nu} are not generic: some nu_i or nu_i-nu_j' \
                ' is (near) integer, use the contour route'


class FactorCountError(ConfigError):
    def __init__(
            self,
            M: int,
            supported: tuple[int, ...],
            subject: str,
            message: str | None = None,
            status_code: int | None = None) -> None:
        super().__init__(message, status_code)

        if message is None:
            self.message = \
                f'{subject} is defined for M in {list(supported)}, got M={M}'
