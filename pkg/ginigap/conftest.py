import os

from pytest import fixture

from ginigap.core.assembler.assembler import Assembler
from ginigap.core.specialfns.ensemble_spec_ie import EnsembleSpecIe


@fixture(autouse=True)
def fresh_assembler():
    yield
    type(Assembler).instances.pop(Assembler, None)


@fixture
def exponential_spec() -> EnsembleSpecIe:
    """n = 1, nu = 0: E(0; (0, s)) = exp(-s)."""
    return EnsembleSpecIe.create(1, 1, [0.0])


@fixture
def config_dir(tmp_path) -> str:
    """Layered configs: prod run defaults, a dev override and a log sink
    under the temporary root."""
    path = tmp_path / 'configs'
    path.mkdir()
    (path / 'run.yaml').write_text('n: 2\nnu: "1.5"\ntol: 1.0e-9\n')
    (path / 'run.dev.yaml').write_text('n: 3\n')
    (path / 'log.yaml').write_text(
        'path: ./var/logs/ginigap.log\nlevel: INFO\n')
    (path / 'notes.txt').write_text('ignored')
    return os.fspath(path)
