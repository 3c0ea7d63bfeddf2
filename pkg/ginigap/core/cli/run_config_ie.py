from dataclasses import dataclass, field
from enum import Enum
from typing import Any, TypeVar

from schema import SchemaError

from ginigap.core import parsing
from ginigap.core.fredholm.interval_union_ie import IntervalUnionIe
from ginigap.core.ie.ie import Ie
from ginigap.core.kernel.kernel_form_enum import KernelFormEnum
from ginigap.core.specialfns.ensemble_spec_ie import EnsembleSpecIe
from ginigap.core.specialfns.q_route_enum import QRouteEnum
from ginigap.core.verify.suite_enum import SuiteEnum
from .cli_command_enum import CLICommandEnum
from .cli_error import CLIError
from .method_enum import MethodEnum

AnyEnum = TypeVar('AnyEnum', bound=Enum)

DEFAULTS: dict[str, Any] = {
    'M': 1,
    'n': 1,
    'nu': '0',
    'lambda': 1.0,
    'method': 'fredholm',
    'tol': 1e-10,
    'samples': 100_000,
    'seed': 0,
    'form': 'integrable',
    'q_route': 'auto',
}
KEYS = set(DEFAULTS) | {
    's', 's_grid', 'J', 'order', 'suite', 'out', 'config'}


def _enum_list(
        value: Any, enum_class: type[AnyEnum], name: str) -> list[AnyEnum]:
    if type(value) is str:
        raw = [x.strip() for x in value.split(',') if x.strip()]
    elif type(value) in (list, tuple):
        raw = list(value)
    else:
        raise CLIError(f'{name} should be a comma list, got {value}')
    try:
        return [enum_class(x) for x in raw]
    except ValueError:
        raise CLIError(
            f'Unrecognized {name} in {raw}, expected values from'
            f' {[x.value for x in enum_class]}')


@dataclass
class RunConfigIe(Ie):
    """Effective parameters of one cli run after all config layers merged.

    Attributes:
        command: Command to run.
        spec: Ensemble, lambda included.
        s_grid: Gap ends for `gap` and `mc`, kernel arguments for `kernel`.
        J: Interval union for `gap` by the Fredholm route, instead of s_grid.
        methods: Routes for `gap`; `mc` always samples.
        tol: Integrator tolerance.
        order: Fixed Nystrom order, self-convergence when None.
        samples: Monte Carlo samples.
        seed: Monte Carlo seed.
        suites: Verification suites, all when empty.
        out: Output file, stdout when None.
        form: Kernel form compared against the sum form by `kernel`.
        q_route: Evaluation route of Q.
    """
    command: CLICommandEnum
    spec: EnsembleSpecIe
    s_grid: list[float] = field(default_factory=list)
    J: IntervalUnionIe | None = None
    methods: list[MethodEnum] = field(
        default_factory=lambda: [MethodEnum.FREDHOLM])
    tol: float = 1e-10
    order: int | None = None
    samples: int = 100_000
    seed: int = 0
    suites: list[SuiteEnum] = field(default_factory=list)
    out: str | None = None
    form: KernelFormEnum = KernelFormEnum.INTEGRABLE
    q_route: QRouteEnum = QRouteEnum.AUTO
    FORMATTED_NAME = 'run'

    @classmethod
    def from_layers(
            cls,
            command: CLICommandEnum,
            *layers: dict[str, Any]) -> 'RunConfigIe':
        """Merge layers given from lowest to highest priority over DEFAULTS.

        Raise:
            CLIError:
                Unknown key or value not valid for the command.
        """
        merged = dict(DEFAULTS)
        for layer in layers:
            unknown = set(layer) - KEYS
            if unknown:
                raise CLIError(f'Unknown run parameters: {sorted(unknown)}')
            # --s and --s-grid name one value, the higher layer wins
            for key, other in (('s', 's_grid'), ('s_grid', 's')):
                if key in layer:
                    merged.pop(other, None)
            merged.update(layer)
        explicit = set().union(*layers) if layers else set()

        spec = EnsembleSpecIe.create(
            parsing.parse_int(merged['M']),
            parsing.parse_int(merged['n']),
            parsing.parse_float_list(merged['nu']),
            parsing.parse_float(merged['lambda']))
        if 's_grid' in merged:
            s_grid = parsing.parse_float_list(merged['s_grid'])
        else:
            s_grid = parsing.parse_float_list(merged.get('s', ''))
        J = None
        if merged.get('J') is not None:
            J = IntervalUnionIe(parsing.parse_float_list(merged['J']))

        methods = _enum_list(merged['method'], MethodEnum, 'method')
        if command is CLICommandEnum.MC:
            if 'method' in explicit and methods != [MethodEnum.MC]:
                raise CLIError('Command `mc` takes method `mc` only')
            methods = [MethodEnum.MC]

        order = merged.get('order')
        config = cls(
            command=command,
            spec=spec,
            s_grid=s_grid,
            J=J,
            methods=methods,
            tol=parsing.parse_float(merged['tol']),
            order=None if order is None else parsing.parse_int(order),
            samples=parsing.parse_int(merged['samples']),
            seed=parsing.parse_int(merged['seed']),
            suites=_enum_list(merged.get('suite', []), SuiteEnum, 'suite'),
            out=merged.get('out'),
            form=_enum_list(merged['form'], KernelFormEnum, 'form')[0],
            q_route=_enum_list(merged['q_route'], QRouteEnum, 'q_route')[0])
        try:
            config.validate_fields()
        except SchemaError as error:
            raise CLIError(f'Run parameter of wrong type: {error}')
        config.check_command()
        return config

    def check_command(self) -> None:
        if self.command not in (CLICommandEnum.GAP, CLICommandEnum.MC):
            return
        if self.J is not None:
            if self.command is CLICommandEnum.MC \
                    or self.methods != [MethodEnum.FREDHOLM]:
                raise CLIError(
                    'Interval unions are computed by the fredholm method only')
            return
        if not self.s_grid:
            raise CLIError('Gap needs --s, --s-grid or --J')
        if self.s_grid[0] < 0:
            raise CLIError(f'Gap ends should be nonnegative: {self.s_grid}')
        if any(b <= a for a, b in zip(self.s_grid[:-1], self.s_grid[1:])):
            raise CLIError(f'Gap ends should increase: {self.s_grid}')
        if MethodEnum.MC in self.methods and self.spec.lam != 1.0:
            raise CLIError('Monte Carlo estimates lambda = 1 only')
