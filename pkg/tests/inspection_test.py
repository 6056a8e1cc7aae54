#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

import typing
import unittest

from carleson_lab import argument, command
from carleson_lab.internal.cmdbase import AutoCommand
from carleson_lab.internal.typing import inspect_object


class InspectionTest(unittest.TestCase):
    def test_inspect_function1(self):
        @command
        def my_function(arg1: str, argument_2: int):
            """HelpMessage"""
            pass

        data = inspect_object(my_function)
        cmd = data.command
        args = data.arguments
        self.assertEqual("my-function", cmd.name)
        self.assertEqual("HelpMessage", cmd.help)
        self.assertEqual(2, len(args))
        self.assertTrue("arg1" in args.keys())
        self.assertTrue("argument-2" in args.keys())

    def test_inspect_explicit_name_and_help(self):
        @command("bleh_command", help="Explicit help", aliases=["bleh"])
        @argument("only", description="checks to run", choices=["cz"])
        def my_function(only: typing.List[str] = None):
            """Docstring help"""
            pass

        data = inspect_object(my_function)
        self.assertEqual("bleh_command", data.command.name)
        self.assertEqual("Explicit help", data.command.help)
        self.assertEqual(["bleh"], data.command.aliases)
        only = data.arguments["only"]
        self.assertEqual("checks to run", only.description)
        self.assertEqual(typing.List[str], only.type)
        self.assertTrue(only.default_value_set)
        self.assertIsNone(only.default_value)
        self.assertEqual(["cz"], only.choices)

    def test_inspect_undecorated(self):
        def my_function(alpha: float = 0.0):
            pass

        data = inspect_object(my_function)
        self.assertIsNone(data.command)
        self.assertEqual(0.0, data.arguments["alpha"].default_value)

    def test_auto_command_needs_config_keys(self):
        @command
        def good(alpha: float = None, h_min: float = None):
            """Good"""

        @command
        def bad(alpha: float = None, banana: str = None):
            """Bad"""

        def undecorated(alpha: float = None):
            pass

        self.assertEqual(["good"], AutoCommand(good).get_command_names())
        self.assertEqual("Good", AutoCommand(good).get_help("good"))
        self.assertRaises(ValueError, AutoCommand, bad)
        self.assertRaises(ValueError, AutoCommand, undecorated)
        self.assertRaises(ValueError, AutoCommand, 42)
