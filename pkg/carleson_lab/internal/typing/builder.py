#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

"""
Turns raw strings from config documents and flags into typed values.

    build_value("0.5", float)            => 0.5
    build_value("false", bool)           => False
    build_value("a, b", List[str])       => ["a", "b"]
    build_value("none", Optional[str])   => None
"""

import typing
from functools import wraps

from carleson_lab.internal.helpers import issubclass_
from carleson_lab.internal.typing.inspect import (
    is_iterable_type,
    is_optional_type,
)

_TRUE = {"true", "yes", "on", "1"}
_FALSE = {"false", "no", "off", "0"}
_NONE = {"none", "null", ""}


def build_value(string, tp=None):
    value = _build_simple_value(string, tp)
    if tp:
        value = apply_typing(value, tp)
    return value


def apply_typing(value, tp):
    return get_typing_function(tp)(value)


def get_list_arg_type_as_str(tp):
    """
    This takes a type (typing.List[int]) and returns a string representation of
    the type argument, or "any" if it's not defined
    """
    assert is_iterable_type(tp)
    args = getattr(tp, "__args__", None)
    return args[0].__name__ if args else "any"


def get_typing_function(tp):
    func = None

    if tp == typing.Any:
        func = _identity_function
    elif issubclass_(tp, bool):
        func = _apply_bool_type
    elif issubclass_(tp, str):
        func = str
    elif is_iterable_type(tp):
        func = _apply_list_type
    elif is_optional_type(tp):
        func = _apply_optional_type
    elif callable(tp):
        func = tp
    else:
        raise ValueError('Cannot find a function to apply type "{}"'.format(tp))

    args = getattr(tp, "__args__", None)

    if args:
        # generic types (List[str], Optional[float], ...) carry builders for
        # their type arguments
        args_types = [get_typing_function(arg) for arg in args]
        func = _partial_builder(args_types)(func)

    return func


def _build_simple_value(string, tp):
    if not isinstance(string, str):
        return string
    if tp is not None and is_optional_type(tp) and string.strip().lower() in _NONE:
        return None
    if not tp or issubclass_(tp, str):
        return string
    if is_iterable_type(tp):
        return [item.strip() for item in string.split(",") if item.strip()]
    return string.strip()


def _apply_bool_type(value):
    if isinstance(value, bool):
        return value
    lowered = str(value).strip().lower()
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False
    raise ValueError("Cannot convert {!r} to a boolean".format(value))


def _apply_list_type(value, value_type=None):
    if not isinstance(value, list):
        value = [value]

    if not value_type:
        return list(value)

    return [value_type(item) for item in value]


def _apply_optional_type(value, left_type=None, _right_type=None):
    if value is None:
        return None
    elif left_type is None:
        return value
    else:
        return left_type(value)


def _partial_builder(args_builders):
    def decorator(function):
        @wraps(function)
        def wrapped(string):
            return function(string, *args_builders)

        return wrapped

    return decorator


def _identity_function(x):
    return x