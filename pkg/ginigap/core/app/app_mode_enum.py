from enum import Enum


class AppModeEnum(Enum):
    DEV = "dev"
    PROD = "prod"
    TEST = "test"
