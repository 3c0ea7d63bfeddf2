from typing import Any

from ginigap.core.validation.validation_error import (
    ValidationError, RangeValidationError)


def validate(
        obj: Any, expected_type: type | list[type],
        obj_name: str = 'Entity', strict: bool = False) -> None:
    if isinstance(expected_type, type):
        if strict:
            if type(obj) is not expected_type:
                raise ValidationError(obj_name, expected_type)
        else:
            if not isinstance(obj, expected_type):
                raise ValidationError(obj_name, expected_type)
    elif type(expected_type) is list:
        found: bool = False

        for type_ in expected_type:
            if type(obj) is type_:
                found = True

        if not found:
            raise ValidationError(obj_name, expected_type)
    else:
        raise TypeError('Expected type should be `type` type')


def validate_range(
        value: float,
        obj_name: str = 'Entity',
        *,
        min_value: float | None = None,
        max_value: float | None = None,
        min_inclusive: bool = True,
        max_inclusive: bool = True) -> None:
    """Validate that numeric value lies inside given bounds.

    Raises:
        RangeValidationError:
            Value is outside of bounds.
    """
    below = min_value is not None and (
        value < min_value if min_inclusive else value <= min_value)
    above = max_value is not None and (
        value > max_value if max_inclusive else value >= max_value)
    if below or above:
        raise RangeValidationError(
            obj_name, value, min_value=min_value, max_value=max_value)
