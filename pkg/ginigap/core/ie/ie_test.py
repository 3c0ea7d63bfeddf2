import json
from dataclasses import dataclass
from enum import Enum

import numpy as np
from pytest import fixture, raises
from schema import SchemaError

from ginigap.core.app.app_mode_enum import AppModeEnum
from ginigap.core.ie.config_ie import ConfigFileError, ConfigIe
from ginigap.core.ie.ie import Ie
from ginigap.core.ie.named_ie import NamedIe
from ginigap.core.test.mock import Mock


class ColorEnum(Enum):
    RED = 'red'


@dataclass
class CustomIe(Ie):
    name: str
    order: int
    nodes: list[float]
    tol: float | None = None


@dataclass
class CustomIeMock(Mock):
    name: str
    order: int
    nodes: list[float]


@fixture
def custom_ie_mock() -> CustomIeMock:
    return CustomIeMock(name='nystrom', order=32, nodes=[0.1, 0.5])


@fixture
def custom_ie(custom_ie_mock: CustomIeMock) -> CustomIe:
    return CustomIe(
        name=custom_ie_mock.name,
        order=custom_ie_mock.order,
        nodes=custom_ie_mock.nodes)


class TestIe():
    def test_custom(self, custom_ie: CustomIe, custom_ie_mock: CustomIeMock):
        expected_json: dict = {
            'custom': {
                'name': custom_ie_mock.name,
                'order': custom_ie_mock.order,
                'nodes': custom_ie_mock.nodes,
                'tol': None
            }
        }

        assert custom_ie.formatted_name == 'custom'
        assert custom_ie.get_json() == expected_json

        custom_ie.validate(custom_ie.get_json())
        custom_ie.validate_fields()
        assert 'testname' in custom_ie.get_json('testname')

    def test_validate_wrong(self):
        with raises(SchemaError):
            CustomIe.validate(
                {'custom': {'name': 'x', 'order': 'many', 'nodes': []}})
        with raises(SchemaError):
            CustomIe.validate(
                {'custom': {'name': 'x', 'order': 3, 'nodes': [], 'tol': '0'}})
        CustomIe.validate(
            {'custom': {'name': 'x', 'order': 3, 'nodes': [], 'tol': 0.1}})

    def test_validate_fields_wrong(self):
        with raises(SchemaError):
            CustomIe(name='x', order=2.5, nodes=[]).validate_fields()
        with raises(SchemaError):
            CustomIe(name='x', order=2, nodes=(0.1,)).validate_fields()

    def test_decompose_numpy_and_enum(self):
        @dataclass
        class ArrayIe(Ie):
            values: np.ndarray
            color: ColorEnum

        decomposed = ArrayIe(np.array([1.0, 2.0]), ColorEnum.RED) \
            .get_inner_json()

        assert decomposed == {'values': [1.0, 2.0], 'color': 'red'}


class TestNamedIe():
    def test_find_by_name(self):
        cells = [NamedIe('log'), NamedIe('run')]

        assert NamedIe.find_by_name('run', cells) is cells[1]
        assert set(NamedIe.map_to_name(cells)) == {'log', 'run'}
        with raises(ValueError):
            NamedIe.find_by_name('db', cells)


class TestConfigIe():
    def test_layers(self, tmp_path, monkeypatch):
        prod = tmp_path / 'run.json'
        dev = tmp_path / 'run.dev.json'
        prod.write_text(json.dumps(
            {'TOL': 1e-9, 'order': 32, 'out': './out.csv'}))
        dev.write_text(json.dumps({'order': 64, 'tag': '{GINIGAP_TAG}'}))
        monkeypatch.setenv('GINIGAP_TAG', 'desk')

        config_ie = ConfigIe(
            name='run',
            source_by_app_mode={
                AppModeEnum.PROD: str(prod), AppModeEnum.DEV: str(dev)})

        prod_config = config_ie.parse(AppModeEnum.PROD, str(tmp_path))
        dev_config = config_ie.parse(AppModeEnum.DEV, str(tmp_path))

        assert prod_config['order'] == 32
        assert prod_config['tol'] == 1e-9
        assert prod_config['out'].endswith('out.csv')
        assert not prod_config['out'].startswith('./')
        assert dev_config['order'] == 64
        assert dev_config['tag'] == 'desk'

    def test_missing_environ(self, tmp_path, monkeypatch):
        source = tmp_path / 'run.json'
        source.write_text(json.dumps({'tag': '{GINIGAP_MISSING}'}))
        monkeypatch.delenv('GINIGAP_MISSING', raising=False)

        config_ie = ConfigIe(
            name='run', source_by_app_mode={AppModeEnum.PROD: str(source)})

        with raises(ConfigFileError):
            config_ie.parse(AppModeEnum.PROD, str(tmp_path))
