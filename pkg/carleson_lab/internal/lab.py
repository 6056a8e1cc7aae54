#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

import asyncio
import logging
import os
import sys
import tempfile
import typing

from termcolor import cprint

from carleson_lab.internal import cmdloader, constants, context, exceptions
from carleson_lab.internal.cmdbase import AutoCommand
from carleson_lab.internal.commands import builtin
from carleson_lab.internal.helpers import try_await
from carleson_lab.internal.io import logger
from carleson_lab.internal.plugin_interface import PluginInterface
from carleson_lab.internal.registry import CommandsRegistry
from carleson_lab.internal.typing.argparse import create_subparser_class

# exit statuses
EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VIOLATION = 2


class CarlesonLab:
    """
    Creates and runs the command line: global options, built-in commands and
    the experiment commands found in `command_pkgs`. `run` returns the exit
    status, 0 on success, 2 when an audited inequality violated its
    thresholds and 1 on error.
    """

    def __init__(
        self,
        name=constants.LOG_PREFIX,
        command_pkgs=None,
        plugin: typing.Optional[PluginInterface] = None,
        testing: bool = False,
    ):
        self._name = name
        self._plugin = plugin or PluginInterface()
        assert isinstance(self._plugin, PluginInterface)
        self._command_pkgs = command_pkgs
        self._testing = testing

        # the context is global
        context._ctx = self._plugin.create_context()
        self._ctx = context.get_context()
        assert isinstance(self._ctx, context.Context)
        self._ctx.set_binary_name(self._name)
        self._ctx.set_testing(testing)
        self._log_handler = None

    def _setup_logging(self, args):
        root_logger = self._plugin.setup_logging(logging.root, args)
        if root_logger:
            return

        if args.verbose and args.verbose >= 2:
            logging_level = logging.DEBUG
        elif args.verbose == 1:
            logging_level = logging.INFO
        else:
            logging_level = logging.WARN

        if args.stderr or self._testing:
            logging_stream = sys.stderr
        else:
            logging_stream = tempfile.NamedTemporaryFile(
                mode="w+",
                prefix="{}-".format(self._name),
                suffix=".log",
                delete=False,
            )
            print("Logging to {}".format(logging_stream.name), file=sys.stderr)

        if self._log_handler is not None:
            logging.root.removeHandler(self._log_handler)
        self._log_handler = logger.setup_logger(
            level=logging_level,
            stream=logging_stream,
            color=not getattr(args, "no_color", False),
        )

    def _setup_terminal(self, args):
        if getattr(args, "no_color", False) or not sys.stdout.isatty():
            os.environ["ANSI_COLORS_DISABLED"] = "True"

    def _parse_args(self, cli_args=sys.argv):
        cli_args = list(cli_args[1:])  # remove binary name
        args, extra = self._opts_parser.parse_known_args(args=cli_args)
        # command flags may appear anywhere, e.g.
        #   carleson-lab -vv --alpha 1 scaling --seed 3
        # unrecognized args move to the end and the line is parsed again
        if extra:
            for extra_arg in extra:
                cli_args.remove(extra_arg)
                cli_args.append(extra_arg)
            args = self._opts_parser.parse_args(args=cli_args)
        return args

    def _validate_args(self, args):
        try:
            self._plugin.validate_args(args)
        except exceptions.ArgsValidationError as e:
            cprint("Arguments validation error: {}".format(e.message), "red", file=sys.stderr)
            return EXIT_ERROR
        except Exception as e:
            cprint(
                "An exception occurred while validating the command "
                "arguments: {}".format(str(e)),
                "red",
                file=sys.stderr,
            )
            return EXIT_ERROR
        return None

    async def run_cli(self, args):
        await try_await(self._ctx.on_cli(args._cmd, args))
        try:
            cmd = self._registry.get_command(args._cmd)
        except exceptions.UnknownCommand as e:
            cprint(e.message, "red", file=sys.stderr)
            return EXIT_ERROR
        return await try_await(cmd.run_cli(args))

    async def _pre_run(self, cli_args):
        self._opts_parser = self._plugin.get_opts_parser()
        SubParser = create_subparser_class(self._opts_parser)

        cmd_parser = self._opts_parser.add_subparsers(
            dest="_cmd",
            help="Command to run",
            parser_class=SubParser,
            metavar="[command]",
        )
        cmd_parser.required = True

        self._registry = CommandsRegistry(cmd_parser)
        self._ctx.set_registry(self._registry)

        for cmd in (builtin.CatalogCommand, builtin.ReportCommand):
            await self._registry.register_command(cmd())

        # commands from the plugin
        for cmd in self._plugin.get_commands():
            await self._registry.register_command(cmd, override=True)
        # commands from the command packages
        command_pkgs = self._command_pkgs
        if not isinstance(command_pkgs, list):
            command_pkgs = [command_pkgs]
        for pkg in command_pkgs:
            for cmd in cmdloader.load_commands(pkg):
                await self._registry.register_command(AutoCommand(cmd), override=True)

        args = self._parse_args(cli_args)
        self._setup_logging(args)
        self._setup_terminal(args)

        self._ctx.set_args(args)
        self._registry.set_cli_args(args)
        return args

    def run(self, cli_args=sys.argv):
        return asyncio.run(self.run_async(cli_args))

    async def run_async(self, cli_args=sys.argv):
        """
        Parses `cli_args` (defaults to sys.argv), runs the command and returns
        the exit status.
        """
        try:
            args = await self._pre_run(cli_args)
        except SystemExit as e:
            # argparse exits 2 on usage errors, 2 is reserved for violations
            return EXIT_OK if not e.code else EXIT_ERROR

        invalid = self._validate_args(args)
        if invalid:
            return invalid

        ret = await self.run_cli(args)
        return exit_status(ret)


def exit_status(ret) -> int:
    if type(ret) is int:
        return ret

    if type(ret) is bool:
        return int(not (ret))

    if ret is None:
        return EXIT_OK
    return EXIT_ERROR
