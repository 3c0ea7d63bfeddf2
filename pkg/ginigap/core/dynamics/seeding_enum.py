from enum import Enum


class SeedingEnum(Enum):
    SERIES = 'series'
    NUMERIC = 'numeric'
    AUTO = 'auto'
