#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

import inspect
import logging
import math
import re
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, Sequence, TypeVar

import jellyfish
import numpy as np

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


async def try_await(result):
    """
    Await if awaitable, otherwise return.
    """
    if inspect.isawaitable(result):
        return await result
    return result


FullArgSpec = namedtuple(
    "FullArgSpec",
    "args varargs varkw defaults kwonlyargs kwonlydefaults annotations",
)


def get_arg_spec(function) -> FullArgSpec:
    """
    `inspect.getfullargspec` with empty containers instead of None, and with
    annotations added by the @argument decorator merged in.
    """
    spec = inspect.getfullargspec(function)._asdict()
    annotations = dict(spec["annotations"] or {})
    annotations.update(getattr(function, "__annotations__", {}) or {})
    spec["annotations"] = annotations
    for field in ("args", "defaults", "kwonlyargs"):
        spec[field] = list(spec[field] or [])
    spec["kwonlydefaults"] = spec["kwonlydefaults"] or {}
    return FullArgSpec(**spec)


def function_to_str(function, with_module=True, with_args=True) -> str:
    """
    Returns a readable representation of a function, used in error messages
    """
    name = getattr(function, "__name__", str(function))
    if with_module:
        name = "{}.{}".format(function.__module__, name)
    if with_args:
        argspec = get_arg_spec(function)
        args = list(argspec.args)
        if argspec.varargs:
            args.append("*" + argspec.varargs)
        if argspec.varkw:
            args.append("**" + argspec.varkw)
        name = "{}({})".format(name, ", ".join(args))
    return name


def transform_name(name: str, from_char="_", to_char="-") -> str:
    """
    Turns a python identifier into a command line friendly name
        xi_count => xi-count
        __special__ => special
    """
    name = name.strip()
    name = re.sub(r"{}+".format(re.escape(from_char)), to_char, name)
    name = re.sub(r"^{c}|{c}$".format(c=re.escape(to_char)), "", name)
    if not name:
        raise ValueError('Invalid name "{}"'.format(name))
    return name


def issubclass_(obj, class_) -> bool:
    # typing constructs raise TypeError on issubclass
    try:
        return issubclass(obj, class_)
    except (AttributeError, TypeError):
        return False


def find_approx(word: str, candidates: Optional[Iterable[str]]) -> List[str]:
    """Finds the closest candidates to a misspelled word (command, config key,
    catalog name). Unique prefix matches win, then damerau-levenshtein
    distance up to 2.
    """
    prefix_matches = set()
    distances = {}
    word = str(word).lower()
    for candidate in candidates or []:
        if str(candidate).startswith(word):
            prefix_matches.add(candidate)
        elif len(candidate) > 1:
            distance = jellyfish.damerau_levenshtein_distance(word, candidate)
            if distance <= 2:
                distances[candidate] = distance

    if prefix_matches:
        return sorted(prefix_matches)
    return [k for k, _ in sorted(distances.items(), key=lambda i: (i[1], i[0]))]


def suggestions_msg(suggestions: Optional[Sequence[str]]) -> str:
    if not suggestions:
        return ""
    if len(suggestions) == 1:
        return f", Did you mean {suggestions[0]}?"
    return f", Did you mean {', '.join(suggestions[:-1])} or {suggestions[-1]}?"


def parallel_map(fn: Callable[[T], R], items: Sequence[T], workers: int = 1) -> List[R]:
    """
    Maps `fn` over `items` on a thread pool, preserving order. Results never
    depend on `workers` since every work item owns its random stream.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(
        max_workers=workers, thread_name_prefix="carleson-worker"
    ) as pool:
        return list(pool.map(fn, items))


def loglog_slope(x: Sequence[float], y: Sequence[float]) -> Optional[float]:
    """
    Least-squares slope of log(y) against log(x) over the strictly positive
    pairs. None when fewer than two usable points remain.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    keep = (x > 0) & (y > 0) & np.isfinite(x) & np.isfinite(y)
    if np.count_nonzero(keep) < 2 or np.ptp(np.log(x[keep])) == 0:
        return None
    slope, _ = np.polyfit(np.log(x[keep]), np.log(y[keep]), 1)
    return float(slope)


def format_complex(value: complex) -> str:
    """
    Descriptor form of a complex literal: 0.5, -0.3+0.1i, 2i
    """
    value = complex(value)
    re_part, im_part = value.real, value.imag
    if im_part == 0:
        return repr(float(re_part))
    imag = "{}i".format(repr(abs(float(im_part))))
    if re_part == 0:
        return imag if im_part > 0 else "-" + imag
    sign = "+" if im_part > 0 else "-"
    return "{}{}{}".format(repr(float(re_part)), sign, imag)


def log_grid(low: float, high: float, count: int) -> np.ndarray:
    """Log-spaced grid from high down to low (inclusive)."""
    if count == 1:
        return np.array([float(high)])
    return np.exp(np.linspace(math.log(high), math.log(low), count))
