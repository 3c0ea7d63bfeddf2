__version__ = '0.1.0'

from .core.error.error import Error
from .core.ie.ie import Ie
from .tools.log import log
from .core.specialfns.ensemble_spec_ie import EnsembleSpecIe
from .core.fredholm.gap import gap_probability
from .core.dynamics.integrate import gap_by_dynamics, integrate
from .core.montecarlo.sampler import empirical_gap

# Modules import
from .core import validation, parsing
