from typing import Any

from ginigap.core.parsing.parsing_error import (
    FloatParsingError, IntParsingError, KeyParsingError)
from ginigap.core.validation import validate


def parse_int(entity: int | str) -> int:
    """Validate given entity and try to convert it to integer.

    If str accepted, converts it to integer.

    Raise:
        IntParsingError:
            Cannot parse entity

    Return:
        Entity converted to integer
    """
    res: int

    validate(entity, [int, str], 'Entity')

    if type(entity) is int:
        res = entity
    else:
        try:
            res = int(entity)
        except ValueError:
            raise IntParsingError(entity)  # type: ignore

    return res


def parse_float(entity: float | int | str) -> float:
    """Validate given entity and try to convert it to float.

    Raise:
        FloatParsingError:
            Cannot parse entity
    """
    res: float

    validate(entity, [float, int, str], 'Entity')

    if type(entity) is str:
        try:
            res = float(entity)
        except ValueError:
            raise FloatParsingError(entity)  # type: ignore
    else:
        res = float(entity)

    return res


def parse_float_list(entity: str | list | tuple | float | int) -> list[float]:
    """Parse comma separated string (or sequence) to list of floats.

    E.g. `"0,0.3,1.7"` -> `[0.0, 0.3, 1.7]`.
    """
    if type(entity) is str:
        parts = [x.strip() for x in entity.split(',') if x.strip()]
    elif type(entity) in (list, tuple):
        parts = list(entity)  # type: ignore
    else:
        parts = [entity]
    return [parse_float(x) for x in parts]


def parse_key(
        key: str, entity: dict,
        post_validation_type: type | list[type] | None = None,
        default: Any = None,
        strict: bool = False) -> Any:
    """Return value parsed from entity by given key.

    Apply validation.validate() on result if `post_validation_type` given.
    """
    validate(entity, dict, 'Map to parse')
    validate(key, str, 'Key')

    try:
        value: Any = entity[key]
    except KeyError:
        if default is None:
            raise KeyParsingError(entity, key)
        else:
            value = default
    else:
        if post_validation_type is not None:
            validate(
                post_validation_type, [type, list], 'Post validation type',
                strict=False)
            validate(
                value, post_validation_type, key.capitalize(), strict=strict)

    return value
