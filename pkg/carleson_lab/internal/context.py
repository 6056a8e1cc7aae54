#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

import copy
from threading import RLock
from typing import Optional

from carleson_lab.internal.config import ExperimentConfig


class Context:
    """
    Process wide state of a run: parsed global arguments, the command
    registry and the resolved configuration of the running experiment.
    Commands reach it through `get_context()`.
    """

    def __init__(self):
        self._binary_name = None
        self._lock = RLock()
        self._testing = False
        self._registry = None
        self._args = {}
        self._config: Optional[ExperimentConfig] = None

    def set_binary_name(self, name):
        self._binary_name = name

    def set_testing(self, testing):
        with self._lock:
            self._testing = testing

    def set_registry(self, registry):
        with self._lock:
            self._registry = registry

    def set_args(self, args):
        with self._lock:
            self._args = copy.deepcopy(args)

    def set_config(self, config: ExperimentConfig):
        with self._lock:
            self._config = config

    @property
    def binary_name(self):
        return self._binary_name

    @property
    def testing(self):
        with self._lock:
            return self._testing

    @property
    def registry(self):
        with self._lock:
            return self._registry

    @property
    def args(self):
        with self._lock:
            return self._args

    @property
    def config(self) -> ExperimentConfig:
        with self._lock:
            if self._config is None:
                # library use outside the command line
                self._config = ExperimentConfig()
            return self._config

    async def on_cli(self, cmd, args):
        """
        Called before a command runs, with the argparse result.
        """
        pass


# set by the CarlesonLab constructor
_ctx = None


def get_context() -> Context:
    global _ctx
    if _ctx is None:
        _ctx = Context()
    return _ctx
