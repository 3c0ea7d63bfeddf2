from enum import IntEnum


class ExitCodeEnum(IntEnum):
    SUCCESS = 0
    VERIFICATION_FAILED = 1
    BAD_PARAMETERS = 2
    NUMERICAL_FAILURE = 3
