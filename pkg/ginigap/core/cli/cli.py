import json
import os
import sys

from dotenv import load_dotenv
from warepy import get_enum_values

from ginigap import __version__ as ginigap_version
from ginigap.core.assembler.assembler import Assembler
from ginigap.core.error.error import Error
from ginigap.core.error.exit_code_enum import ExitCodeEnum
from ginigap.tools.log import log
from .cli_command_enum import CLICommandEnum
from .cli_error import CLIError
from .cli_input_ie import CLIInputIe


@log.catch(reraise=True)
def main() -> None:
    # Environs should be loaded from run's root directory
    load_dotenv(os.path.join(os.getcwd(), '.env'))

    try:
        args: CLIInputIe = _parse_input(sys.argv)
        match args.command_enum:
            case CLICommandEnum.VERSION:
                print(f'ginigap {ginigap_version}')
                code = ExitCodeEnum.SUCCESS
            case _:
                code = Assembler(args).run()
    except Error as error:
        log.error(f'{error.__class__.__name__}: {error.message}')
        print(json.dumps(error.expose()), file=sys.stderr)
        code = error.status_code
    sys.exit(int(code))


def _parse_input(args: list[str]) -> CLIInputIe:
    if len(args) < 2:
        raise CLIError(
            f'No command given, expected one of'
            f' {get_enum_values(CLICommandEnum)}')
    try:
        command_enum = CLICommandEnum(args[1])
    except ValueError:
        raise CLIError(f'Unrecognized command: {args[1]}')

    if command_enum is CLICommandEnum.VERSION and len(args) > 2:
        raise CLIError(
            'Command `version` shouldn\'t be followed by any other arguments')

    flags: dict[str, str] = {}
    rest = args[2:]
    if len(rest) % 2:
        raise CLIError(f'Flag {rest[-1]} has no value')
    for flag, value in zip(rest[::2], rest[1::2]):
        match flag:
            case '--M' | '--n' | '--nu' | '--lambda' | '--s' | '--s-grid' \
                    | '--J' | '--method' | '--tol' | '--order' | '--samples' \
                    | '--seed' | '--suite' | '--out' | '--config' | '--form' \
                    | '--q-route':
                key = flag[2:].replace('-', '_')
                if key in flags:
                    raise CLIError(f'Flag {flag} has been defined twice')
                if value.startswith('--'):
                    raise CLIError(f'No value specified for flag {flag}')
                flags[key] = value
            case _:
                raise CLIError(f'Unrecognized flag: {flag}')

    if 's' in flags and 's_grid' in flags:
        raise CLIError('Flags --s and --s-grid exclude each other')
    return CLIInputIe(command_enum=command_enum, flags=flags)


if __name__ == "__main__":
    main()
