from enum import Enum


class KernelFormEnum(Enum):
    SUM = "sum"
    INTEGRABLE = "integrable"
    # Averaged representation over a one-dimensional integral in u
    INTEGRAL = "integral"
