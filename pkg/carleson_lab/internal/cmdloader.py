#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

import logging
import pkgutil
import types
import typing as t
from importlib import import_module

logger = logging.getLogger(__name__)


def _walk_module(module: types.ModuleType):
    for attr_name in sorted(dir(module)):
        if attr_name.startswith("_"):
            continue
        member = getattr(module, attr_name)
        # re-exported commands belong to the module defining them
        if hasattr(member, "__command") and member.__module__ == module.__name__:
            yield member


def _walk_package(name, path) -> t.Iterator[types.FunctionType]:
    for _, modname, ispkg in pkgutil.walk_packages(path, prefix=f"{name}."):
        loaded = import_module(modname)
        if not ispkg:
            logger.debug("scanning %s for commands", modname)
            yield from _walk_module(loaded)


def load_commands(base_package) -> t.Iterator[types.FunctionType]:
    """
    Yields every function decorated with @command found, recursively, in the
    modules of a package (or in a single module).
    """
    if base_package is None:
        return
    if hasattr(base_package, "__path__"):
        yield from _walk_package(base_package.__name__, base_package.__path__)
    else:
        yield from _walk_module(base_package)
