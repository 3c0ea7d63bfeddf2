from enum import Enum


class CLICommandEnum(Enum):
    GAP = 'gap'
    KERNEL = 'kernel'
    SERIES = 'series'
    VERIFY = 'verify'
    MC = 'mc'
    VERSION = 'version'
