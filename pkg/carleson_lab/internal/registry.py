#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

import logging

from termcolor import cprint

from carleson_lab.internal.cmdbase import Command
from carleson_lab.internal.exceptions import UnknownCommand
from carleson_lab.internal.helpers import find_approx, suggestions_msg, try_await

logger = logging.getLogger(__name__)


class CommandsRegistry:
    """
    Holds every command implementation and resolves a command string into the
    object handling it
    """

    def __init__(self, parser):
        # maps a command name to its Command instance
        self._cmd_instance_map = {}
        # sub-parsers action, each command adds its own parser
        self._parser = parser
        self._args = None

    async def register_command(self, cmd_instance, override=False):
        if not isinstance(cmd_instance, Command):
            raise TypeError(
                "Invalid command instance, must be an instance of "
                "subclass of Command"
            )

        cmd_instance.set_command_registry(self)
        cmd_keys = cmd_instance.get_command_names()

        for cmd in cmd_keys:
            if not cmd_instance.get_help(cmd):
                cprint(
                    (
                        "[WARNING] The command {} will not be loaded. "
                        "Please provide a help message by either defining a "
                        "docstring or filling the help argument in the "
                        "@command annotation"
                    ).format(cmd_keys[0]),
                    "red",
                )
                return None

        if not override:
            conflicts = [cmd for cmd in cmd_keys if cmd.lower() in self._cmd_instance_map]
            if conflicts:
                raise ValueError(
                    "Some other command instance has registered "
                    "the name(s) {}".format(conflicts)
                )

        await try_await(cmd_instance.add_arguments(self._parser))

        for cmd in cmd_keys:
            self._cmd_instance_map[cmd.lower()] = cmd_instance
        logger.debug("registered command %s", ", ".join(cmd_keys))
        return cmd_instance

    def __contains__(self, cmd):
        return cmd.lower() in self._cmd_instance_map

    def get_all_commands(self):
        return set(self._cmd_instance_map.values())

    def get_all_commands_map(self):
        return self._cmd_instance_map

    def find_command(self, cmd):
        return self._cmd_instance_map.get(cmd.lower())

    def get_command(self, cmd):
        """Like find_command, raising UnknownCommand with suggestions."""
        instance = self.find_command(cmd)
        if instance is None:
            suggestions = find_approx(cmd.lower(), self._cmd_instance_map)
            raise UnknownCommand(
                "Command `{}` is unknown{}".format(cmd, suggestions_msg(suggestions)),
                command=cmd,
            )
        return instance

    def set_cli_args(self, args):
        self._args = args

    def get_cli_arg(self, arg):
        return getattr(self._args, arg, None)
