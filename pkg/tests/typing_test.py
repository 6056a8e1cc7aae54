#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

import argparse
import inspect
import typing
import unittest
from io import StringIO

from carleson_lab.internal.typing import argument, command
from carleson_lab.internal.typing.argparse import (
    add_command,
    find_command,
    transform_argument_name,
)
from carleson_lab.internal.typing.builder import build_value, get_list_arg_type_as_str


class ParseError(Exception):
    pass


class ContainedParser(argparse.ArgumentParser):
    """
    Parser that gives options that avoid using sys.stdout, sys.stderr and
    raising SystemExit
    """

    def help(self):
        return self._print_to_buffer(self.print_help)

    def _print_to_buffer(self, print_function):
        s = StringIO()
        print_function(s)
        return s.getvalue()

    def error(self, message):
        raise ParseError(message)


class SimpleValuesBuilderTest(unittest.TestCase):
    def test_build_string(self):
        self.assertEqual("monomial:2", build_value("monomial:2", str))
        # strings are taken verbatim
        self.assertEqual(" spaced ", build_value(" spaced ", str))

    def test_build_numbers(self):
        self.assertEqual(1, build_value("1", int))
        self.assertEqual(3, build_value(" 3 ", int))
        self.assertEqual(0.5, build_value("0.5", float))
        self.assertEqual(1e-6, build_value("1e-6", float))
        self.assertRaises(ValueError, build_value, "half", float)

    def test_build_non_strings_pass_through(self):
        self.assertEqual(7, build_value(7, int))
        self.assertEqual(2.0, build_value(2, float))
        self.assertEqual(True, build_value(True, bool))

    def test_build_bool(self):
        for raw in ("true", "yes", "on", "1", "TRUE", " On "):
            self.assertIs(True, build_value(raw, bool), raw)
        for raw in ("false", "no", "off", "0", "False"):
            self.assertIs(False, build_value(raw, bool), raw)
        self.assertRaises(ValueError, build_value, "maybe", bool)

    def test_build_typed_list(self):
        self.assertEqual(["a", "b"], build_value("a, b", typing.List[str]))
        self.assertEqual([1, 2, 3], build_value("1,2,3", typing.List[int]))
        self.assertEqual(["dyadic"], build_value("dyadic", typing.List[str]))
        self.assertEqual([], build_value(" , ", typing.List[str]))
        # lists coming from argparse are already split
        self.assertEqual([0.5, 1.0], build_value(["0.5", "1"], typing.List[float]))

    def test_build_optional(self):
        for raw in ("none", "null", "", "None"):
            self.assertIsNone(build_value(raw, typing.Optional[str]), raw)
        self.assertEqual("out.json", build_value("out.json", typing.Optional[str]))
        self.assertEqual(0.25, build_value("0.25", typing.Optional[float]))

    def test_list_arg_type_as_str(self):
        self.assertEqual("int", get_list_arg_type_as_str(typing.List[int]))
        self.assertEqual("str", get_list_arg_type_as_str(typing.List[str]))


class ArgparseExtensionTest(unittest.TestCase):
    def test_no_decorator_simple(self):
        def foo():
            return "bar"

        def foo2(arg1, arg2):
            return (arg1, arg2)

        self._test(foo, "foo".split(), "bar")
        self._test(
            foo,
            "foo --invalid arg".split(),
            ParseError("unrecognized arguments: --invalid arg"),
        )

        self._test(foo2, "foo2 --arg1=abc --arg2=123".split(), ("abc", "123"))
        self._test(foo2, "foo2 --arg1 abc --arg2 123".split(), ("abc", "123"))
        self._test(foo2, "foo2 --arg1 abc".split(), ParseError)

    def test_config_key_defaults(self):
        @command
        @argument("h_min", description="smallest window")
        def foo(alpha: float = None, h_min: float = None):
            return (alpha, h_min)

        self._test(foo, "foo".split(), (None, None))
        self._test(foo, "foo --alpha 1.5".split(), (1.5, None))
        self._test(foo, "foo --alpha -0.5 --h-min 0.01".split(), (-0.5, 0.01))
        self._test(foo, "foo --alpha one".split(), ParseError)

    def test_bool_flags(self):
        @command
        def foo(prune: bool = None):
            return prune

        # unset, bare flag and explicit value
        self._test(foo, "foo".split(), None)
        self._test(foo, "foo --prune".split(), True)
        self._test(foo, "foo --prune false".split(), False)
        self._test(foo, "foo --prune yes".split(), True)
        self._test(foo, "foo --prune maybe".split(), ParseError)

    def test_list_with_choices(self):
        @command
        @argument("only", choices=["dyadic", "cz", "remark"])
        def foo(only: typing.List[str] = None):
            return only

        self._test(foo, "foo --only dyadic cz".split(), ["dyadic", "cz"])
        self._test(foo, "foo --only dyadyc".split(), ParseError)

    def test_argument_decorated_aliases(self):
        @argument("symbol", aliases=["S", "sym"])
        def foo(symbol: str = None):
            return symbol

        self._test(foo, "foo --symbol identity".split(), "identity")
        self._test(foo, "foo -S monomial:2".split(), "monomial:2")
        self._test(foo, "foo --sym lens:0.5".split(), "lens:0.5")

    def test_argument_decorated_different_name(self):
        @argument("arg1", name="banana")
        def foo(arg1, arg2):
            return "{} {}".format(arg1, arg2)

        self._test(foo, "foo --banana Hello --arg2 World".split(), "Hello World")
        self._test(foo, "foo --arg1 Hello --arg2 World".split(), ParseError)

    def test_argument_decorated_unknown_arg(self):
        with self.assertRaises(NameError):

            @argument("arg1", description="arg1 description")
            @argument("bar", description="this arg doesnt exist!")
            def foo(arg1, arg2):
                pass

    def test_argument_type_conflict(self):
        with self.assertRaises(TypeError):

            @argument("arg", type=int)
            def foo(arg: str):
                pass

    def test_duplicate_argument_decorator(self):
        with self.assertRaises(ValueError):

            @command
            @argument("arg", name="arg1")
            @argument("arg", name="arg2")
            def foo(arg=1):
                pass

    def test_command_on_class(self):
        with self.assertRaises(ValueError):

            @command
            class Foo:
                pass

    def test_command_decorator_presence(self):
        def foo():
            return "bar"

        self._test(foo, ["foo"], "bar")
        self._test(command(foo), ["foo"], "bar")
        self._test(command()(foo), ["foo"], "bar")

    def test_positional_arg(self):
        @argument("path", positional=True)
        def foo(path: str):
            return path

        self._test(foo, "foo report.json", "report.json")
        self._test(foo, "foo", ParseError)
        self._test(foo, "foo a.json b.json", ParseError)

    def test_positional_with_default(self):
        with self.assertRaises(ValueError):

            @command
            @argument("arg", positional=True)
            def foo(arg="default"):
                return arg

            add_command(ContainedParser(), foo)

    def test_positional_with_aliases(self):
        with self.assertRaises(ValueError):

            @argument("arg", positional=True, aliases=["a"])
            def foo(arg):
                return arg

    def test_help_lists_flags(self):
        @command
        @argument("xi_count", description="number of window centres")
        def foo(xi_count: int = None):
            """Foo help"""
            return xi_count

        parser = ContainedParser()
        subparser = add_command(parser, foo)
        help = subparser.format_help()
        self.assertIn("--xi-count INT", help)
        self.assertIn("number of window centres", help)

    def test_transform_argument_name(self):
        self.assertEqual("--h-min", transform_argument_name("h_min"))
        self.assertEqual("-S", transform_argument_name("S"))

    def _test(self, command_function, arguments, expected_result):
        if isinstance(arguments, str):
            arguments = arguments.split()

        parser = ContainedParser()
        add_command(parser, command_function)
        try:
            parsed = parser.parse_args(args=arguments)
        except Exception as e:
            if inspect.isclass(expected_result):
                self.assertIsInstance(e, expected_result)
            elif isinstance(expected_result, ParseError):
                self.assertEqual(str(e), str(expected_result))
            else:
                raise
        else:
            command_function = find_command(parser, parsed, True)
            self.assertEqual(expected_result, command_function())
