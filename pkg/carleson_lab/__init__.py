#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

from .internal import constants, context, exceptions
from .internal.config import ExperimentConfig, load_config, parse_config
from .internal.lab import CarlesonLab
from .internal.plugin_interface import PluginInterface
from .internal.typing import argument, command

name = "carleson-lab"

__all__ = [
    "CarlesonLab",
    "ExperimentConfig",
    "PluginInterface",
    "argument",
    "command",
    "context",
    "exceptions",
    "load_config",
    "parse_config",
]

__version__ = constants.VERSION
