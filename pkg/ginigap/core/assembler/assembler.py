import json
import os
from typing import Any

from warepy import Singleton, get_enum_values, join_paths

from ginigap.core.app.app_mode_enum import AppModeEnum
from ginigap.core.cli.cli_command_enum import CLICommandEnum
from ginigap.core.cli.cli_error import CLIError
from ginigap.core.cli.cli_input_ie import CLIInputIe
from ginigap.core.cli.commands import execute
from ginigap.core.cli.run_config_ie import RunConfigIe
from ginigap.core.error.error import ConfigError
from ginigap.core.ie.config_ie import ConfigIe
from ginigap.core.ie.named_ie import NamedIe
from ginigap.tools.log import log
from .config_extension_enum import ConfigExtensionEnum


class Assembler(Singleton):
    """Assembles configuration layers, the log sink and the run config for one
    cli invocation.

    Args:
        cli_input:
            Parsed command and flags.
        root_dir (optional):
            Directory relative config paths are joined with. Defaults to
            `os.getcwd()`.
        config_dir (optional):
            Directory scanned for `name[.mode].yaml|json` files. Defaults to
            env `GINIGAP_CONFIG_DIR` or `./configs`.
        mode_enum (optional):
            Config layer mode. Defaults to env `GINIGAP_MODE` or `prod`.
        extra_configs_by_name (optional):
            Mappings updating named configs after their layers are merged,
            e.g. `{"log": {"level": "INFO"}}`.
    """
    DEFAULT_LOG_PARAMS = {
        "path": "./var/logs/ginigap.log",
        "level": "DEBUG",
        "format":
            "{time:%Y.%m.%d at %H:%M:%S:%f%z} | {level} | {extra}"
            " >> {message}",
        "rotation": "10 MB",
        "serialize": False
    }

    def __init__(
            self,
            cli_input: CLIInputIe,
            root_dir: str | None = None,
            config_dir: str | None = None,
            mode_enum: AppModeEnum | None = None,
            extra_configs_by_name: dict[str, Any] | None = None) -> None:
        self.cli_input = cli_input
        self.root_dir = root_dir or os.getcwd()
        self.extra_configs_by_name = extra_configs_by_name or {}

        if mode_enum is None:
            raw_mode = os.getenv('GINIGAP_MODE', AppModeEnum.PROD.value)
            try:
                mode_enum = AppModeEnum(raw_mode)
            except ValueError:
                raise ConfigError(
                    f'GINIGAP_MODE should be one of'
                    f' {get_enum_values(AppModeEnum)}, got {raw_mode}')
        self.mode_enum: AppModeEnum = mode_enum

        self._assign_config_ies(
            config_dir or os.getenv('GINIGAP_CONFIG_DIR', './configs'))
        self._register_self_singleton()
        self._build_log()
        self.run_config: RunConfigIe = self._build_run_config()

    def _register_self_singleton(self):
        """Register self instance to Singleton instance, so the latest
        assembled run is reachable through `Assembler.instance()`."""
        type(self.__class__).instances[self.__class__] = self

    def _resolve_path(self, path: str) -> str:
        """Absolute paths are kept, relative ones are joined with root_dir."""
        if os.path.isabs(path):
            return path
        return join_paths(self.root_dir, path)

    def _assign_config_ies(self, config_dir: str) -> None:
        """Create ConfigIes from config files under config_dir.

        Name taken from filename of config. Names can contain additional
        extension like `name.dev.yaml` according to app modes; configs
        without it are considered `prod` moded.
        """
        self.config_ies: list[ConfigIe] = []

        config_path: str = self._resolve_path(config_dir)
        if not os.path.isdir(config_path):
            log.debug(f'No config dir at {config_path}, defaults are used')
            return

        for name, source_map in self._find_config_files(config_path).items():
            self.config_ies.append(ConfigIe(
                name=name,
                source_by_app_mode=source_map))

    def _find_config_files(
            self, config_path: str) -> dict[str, dict[AppModeEnum, str]]:
        """Return paths to configs for all app modes per config name.

        Return example:
        ```python
        {
            "run": {
                AppModeEnum.PROD: "./configs/run.yaml",
                AppModeEnum.TEST: "./configs/run.test.yaml"
            }
        }
        ```
        """
        source_map_by_name: dict[str, dict[AppModeEnum, str]] = {}
        extensions = get_enum_values(ConfigExtensionEnum)
        for filename in sorted(os.listdir(config_path)):
            file_path = join_paths(config_path, filename)
            if not os.path.isfile(file_path):
                continue

            parts = filename.split(".")
            if len(parts) == 2 and parts[1] in extensions:
                mode = AppModeEnum.PROD
            elif len(parts) == 3 \
                    and parts[1] in get_enum_values(AppModeEnum) \
                    and parts[2] in extensions:
                mode = AppModeEnum(parts[1])
            else:
                # Names with extra dots or unsupported extensions
                continue
            source_map_by_name.setdefault(parts[0], {})[mode] = file_path
        return source_map_by_name

    def _assemble_config(self, name: str) -> dict[str, Any]:
        """Merged layers of the named config, empty if there is no such
        config."""
        try:
            config_ie: ConfigIe = NamedIe.find_by_name(name, self.config_ies)
        except ValueError:
            config = dict(self.extra_configs_by_name.get(name, {}))
        else:
            config = config_ie.parse(
                app_mode_enum=self.mode_enum,
                root_path=self.root_dir,
                update_with=self.extra_configs_by_name.get(name, None),
                convert_keys_to_lower=False)
        return config

    def _build_log(self) -> None:
        # Partially given config keeps defaults for missing keys
        log_kwargs = dict(self.DEFAULT_LOG_PARAMS)
        log_kwargs.update(
            {k.lower(): v for k, v in self._assemble_config('log').items()})
        log_kwargs["path"] = self._resolve_path(log_kwargs["path"])
        log.configure(**log_kwargs)

    def _load_file_config(self, path: str) -> dict[str, Any]:
        source = self._resolve_path(path)
        try:
            with open(source, 'r') as file:
                config = json.load(file)
        except (OSError, json.JSONDecodeError) as error:
            raise CLIError(f'Cannot read config file {source}: {error}')
        if not isinstance(config, dict):
            raise CLIError(f'Config file {source} should hold a mapping')
        return config

    def _build_run_config(self) -> RunConfigIe:
        """Layers by priority: flags, `--config` file, `run` config, run
        defaults."""
        flags = self.cli_input.flags
        file_config = {}
        if 'config' in flags:
            file_config = self._load_file_config(flags['config'])
        return RunConfigIe.from_layers(
            self.cli_input.command_enum,
            self._assemble_config('run'),
            file_config,
            flags)

    def run(self) -> int:
        if self.cli_input.command_enum is CLICommandEnum.VERSION:
            raise CLIError('Command `version` has no run')
        log.info(
            f'Run {self.cli_input.command_enum.value} in mode'
            f' {self.mode_enum.value}')
        return execute(self.run_config)
