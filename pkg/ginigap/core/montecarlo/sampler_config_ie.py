from dataclasses import dataclass

from ginigap.core.ie.ie import Ie
from ginigap.core.specialfns.ensemble_spec_ie import EnsembleSpecIe
from ginigap.core.validation import validate, validate_range
from .montecarlo_error import DimensionOverflowError, NonIntegerNuError

BATCH_SIZE = 10_000
MAX_DIMENSION = 512


@dataclass
class SamplerConfigIe(Ie):
    """Monte Carlo run over products X_M ... X_1 with X_m of size
    (n + nu_m) x (n + nu_{m-1}).

    Attributes:
        spec: Ensemble with integer nu; lam is ignored.
        samples: Number of sampled products.
        seed: Root of the seed sequence, one child per batch.
        batch_size: Products drawn and decomposed at once.
    """
    spec: EnsembleSpecIe
    samples: int
    seed: int
    batch_size: int = BATCH_SIZE
    FORMATTED_NAME = 'sampler'

    def __post_init__(self) -> None:
        validate(self.samples, int, 'samples', strict=True)
        validate(self.seed, int, 'seed', strict=True)
        validate(self.batch_size, int, 'batch_size', strict=True)
        validate_range(self.samples, 'samples', min_value=1)
        validate_range(self.batch_size, 'batch_size', min_value=1)
        validate_range(
            self.seed, 'seed', min_value=0, max_value=2**64,
            max_inclusive=False)

        if not self.spec.has_integer_nu:
            raise NonIntegerNuError(list(self.spec.nu))
        if max(self.dimensions) > MAX_DIMENSION:
            raise DimensionOverflowError(max(self.dimensions), MAX_DIMENSION)

    @property
    def dimensions(self) -> list[int]:
        """N_0, ..., N_M."""
        return [self.spec.n + round(nu) for nu in self.spec.nu]

    @property
    def batch_sizes(self) -> list[int]:
        full, rest = divmod(self.samples, self.batch_size)
        return [self.batch_size] * full + ([rest] if rest else [])
