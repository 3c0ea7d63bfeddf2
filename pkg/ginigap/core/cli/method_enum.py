from enum import Enum


class MethodEnum(Enum):
    FREDHOLM = 'fredholm'
    DYNAMICS = 'dynamics'
    CHI_SERIES = 'chi-series'
    MC = 'mc'
