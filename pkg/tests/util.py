#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

from carleson_lab import CarlesonLab, PluginInterface
from carleson_lab.internal.cmdbase import AutoCommand, Command


class TestPlugin(PluginInterface):
    def __init__(self, commands):
        self._commands = commands

    def get_commands(self):
        return [c if isinstance(c, Command) else AutoCommand(c) for c in self._commands]


class TestShell(CarlesonLab):
    def __init__(self, commands=(), command_pkgs=None, name="carleson-lab"):
        super(TestShell, self).__init__(
            name, command_pkgs=command_pkgs, plugin=TestPlugin(commands), testing=True
        )

    async def run_cli_line(self, raw_line):
        return await self.run_async(raw_line.split())
