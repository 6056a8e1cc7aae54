#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

import json
import logging
import sys
import traceback
from textwrap import dedent
from typing import Any, Dict

from termcolor import cprint

from carleson_lab.internal import context
from carleson_lab.internal.config import CONFIG_KEYS, load_config
from carleson_lab.internal.exceptions import CarlesonLabError
from carleson_lab.internal.helpers import function_to_str, try_await
from carleson_lab.internal.io.report import jsonable
from carleson_lab.internal.plugin_interface import GLOBAL_CONFIG_KEYS
from carleson_lab.internal.typing import FunctionInspection, inspect_object
from carleson_lab.internal.typing.argparse import (
    get_arguments_for_command,
    register_command,
)

logger = logging.getLogger(__name__)


class Command:
    """A Command is the abstraction over one or more commands run from the
    command line. Sub-classes implement `get_command_names`, `get_help` and
    `run_cli`.
    """

    def __init__(self):
        self._command_registry = None
        self._built_in = False

    @property
    def built_in(self) -> bool:
        return self._built_in

    def set_command_registry(self, command_registry):
        self._command_registry = command_registry

    async def run_cli(self, args):
        """
        Runs the command with the argparse result, returns the exit status.
        """
        raise NotImplementedError("run_cli must be overridden")

    async def add_arguments(self, parser):
        """
        Receives the sub-parsers of the main "argparse.ArgumentParser", every
        command registers its parser and flags there.
        """
        pass

    @property
    def metadata(self) -> FunctionInspection:
        return FunctionInspection(arguments={}, command=None)

    def get_command_names(self):
        """
        Names this command answers to, as a list of strings.
        """
        raise NotImplementedError("get_command_names must be overridden")

    def get_help(self, cmd, *args):
        raise NotImplementedError("get_help must be overridden")

    def get_help_short(self, cmd, *args):
        help = self.get_help(cmd, *args)
        return help.split("\n\n")[0].strip() if help else help


def report_error(e: CarlesonLabError) -> int:
    """One structured line on stderr plus a red summary; status 1."""
    print(json.dumps(jsonable(e.to_record()), sort_keys=True), file=sys.stderr)
    cprint("{}: {}".format(type(e).__name__, e.message), "red", file=sys.stderr)
    return 1


class AutoCommand(Command):
    """
    Wraps a function decorated with @command. Its arguments are configuration
    keys: the flags given on the command line are merged with the config
    document and the defaults of the command, and the function is called with
    the resolved values. The resolved `ExperimentConfig` is published on the
    context for the duration of the call.
    """

    def __init__(self, fn):
        super().__init__()
        self._fn = fn

        if not callable(fn):
            raise ValueError("fn argument must be a callable")

        self._obj_metadata = inspect_object(fn)
        if self._obj_metadata.command is None:
            raise ValueError(
                "function {} is not decorated with @command".format(function_to_str(fn))
            )
        unknown = [
            arg.arg
            for arg in self._obj_metadata.arguments.values()
            if arg.arg not in CONFIG_KEYS
        ]
        if unknown:
            raise ValueError(
                "arguments {} of {} are not configuration keys".format(
                    unknown, function_to_str(fn)
                )
            )

    @property
    def metadata(self) -> FunctionInspection:
        return self._obj_metadata

    @property
    def name(self) -> str:
        return self.metadata.command.name

    def _overrides(self, args) -> Dict[str, Any]:
        overrides = {
            k: v for k, v in get_arguments_for_command(self._fn, args).items() if v is not None
        }
        for key in GLOBAL_CONFIG_KEYS:
            value = getattr(args, key, None)
            if value is not None:
                overrides.setdefault(key, value)
        return overrides

    async def run_cli(self, args):
        ctx = context.get_context()
        try:
            cfg = load_config(getattr(args, "config", None), self._overrides(args), self.name)
            ctx.set_config(cfg)
            kwargs = {
                arg.arg: getattr(cfg, arg.arg) for arg in self.metadata.arguments.values()
            }
            logger.info("running %s with seed %d", self.name, cfg.seed)
            return await try_await(self._fn(**kwargs))
        except CarlesonLabError as e:
            logger.error("%s failed: %s", self.name, e.message)
            return report_error(e)
        except Exception as e:
            cprint("Error running command: {}".format(str(e)), "red", file=sys.stderr)
            cprint("-" * 60, "yellow", file=sys.stderr)
            traceback.print_exc(file=sys.stderr)
            cprint("-" * 60, "yellow", file=sys.stderr)
            return 1

    async def add_arguments(self, parser):
        register_command(parser, self.metadata)

    def get_command_names(self):
        command = self.metadata.command
        return [command.name] + command.aliases

    def get_help(self, cmd, *args):
        help = self.metadata.command.help
        return dedent(help).strip() if help else None
