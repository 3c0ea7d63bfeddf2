from dataclasses import dataclass, field

from ginigap.core.ie.ie import Ie
from ginigap.core.validation import validate_range
from .suite_enum import SuiteEnum


@dataclass
class VerifyProfileIe(Ie):
    """Which suites to run and with what Monte Carlo budget."""
    suites: list[SuiteEnum] = field(default_factory=lambda: list(SuiteEnum))
    samples: int = 100_000
    seed: int = 2024
    FORMATTED_NAME = 'verify'

    def __post_init__(self) -> None:
        validate_range(self.samples, 'samples', min_value=1)
        validate_range(self.seed, 'seed', min_value=0)
