from dataclasses import dataclass, field

from ginigap.core.ie.ie import Ie
from ginigap.tools.hints import FlagMap
from .cli_command_enum import CLICommandEnum


@dataclass
class CLIInputIe(Ie):
    command_enum: CLICommandEnum
    # Raw flag values keyed by flag name without dashes, e.g. `s_grid`
    flags: FlagMap = field(default_factory=dict)
