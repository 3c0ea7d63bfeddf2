from .exit_code_enum import ExitCodeEnum


class Error(Exception):
    """Root of every ginigap error.

    A run ended by an error exits with its `status_code`; the cli writes
    `expose()` to stderr as one json record.

    Args:
        message (str, optional):
            Defaults to cls.DEFAULT_MESSAGE.
        status_code (int, optional):
            Exit code. Defaults to cls.DEFAULT_STATUS_CODE.

    Raises:
        TypeError:
            Message is not str or status code is not int.
    """
    DEFAULT_MESSAGE = ''
    DEFAULT_STATUS_CODE: int = ExitCodeEnum.NUMERICAL_FAILURE

    def __init__(
            self,
            message: str | None = None,
            status_code: int | None = None) -> None:
        super().__init__(message)

        if message is not None and type(message) is not str:
            raise TypeError(
                f'Error message should be str, got {type(message)}')
        if status_code is not None and not isinstance(status_code, int):
            raise TypeError(
                f'Error status code should be int, got {type(status_code)}')

        self.message: str = \
            self.DEFAULT_MESSAGE if message is None else message
        self.status_code: int = int(
            self.DEFAULT_STATUS_CODE if status_code is None else status_code)

    @property
    def kind(self) -> str:
        """Lowercase name of the exit code, `other` for codes outside
        ExitCodeEnum."""
        try:
            return ExitCodeEnum(self.status_code).name.lower()
        except ValueError:
            return 'other'

    def expose(self) -> dict:
        """Structured record of the error.

        Return example:
        ```python
        {
            "error": {
                "name": "ContourError",
                "message": "...",
                "status_code": 3,
                "kind": "numerical_failure"
            }
        }
        ```
        """
        return {"error": {
            "name": self.__class__.__name__,
            "message": self.message,
            "status_code": self.status_code,
            "kind": self.kind
        }}

    def __str__(self) -> str:
        return self.message


class ConfigError(Error):
    """Run cannot start because of user-given parameters."""
    DEFAULT_STATUS_CODE = ExitCodeEnum.BAD_PARAMETERS


class NumericalError(Error):
    """Computation started but could not deliver a trustworthy number."""
    DEFAULT_STATUS_CODE = ExitCodeEnum.NUMERICAL_FAILURE


class VerificationError(Error):
    DEFAULT_MESSAGE = 'Verification failed'
    DEFAULT_STATUS_CODE = ExitCodeEnum.VERIFICATION_FAILED
