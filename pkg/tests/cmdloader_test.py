#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

import unittest

from carleson_lab import commands as lab_commands
from carleson_lab.internal import cmdloader
from tests import empty_package, sample_package


class CommandLoaderTest(unittest.TestCase):
    def test_load_no_packages(self):
        self.assertEqual([], list(cmdloader.load_commands(None)))

    def test_load_empty_packages(self):
        self.assertEqual([], list(cmdloader.load_commands(empty_package)))

    def test_load_sample_packages(self):
        loaded = list(cmdloader.load_commands(sample_package))
        # the re-export in more_commands is not loaded twice
        self.assertEqual(3, len(loaded))
        from tests.sample_package import commands
        from tests.sample_package.subpackage import more_commands

        self.assertTrue(commands.example_command1 in loaded)
        self.assertTrue(commands.example_async_command1 in loaded)
        self.assertTrue(more_commands.example_command2 in loaded)
        self.assertFalse(commands.not_a_command in loaded)

    def test_load_single_module(self):
        from tests.sample_package import commands

        loaded = list(cmdloader.load_commands(commands))
        self.assertEqual(
            ["example_async_command1", "example_command1"], [c.__name__ for c in loaded]
        )

    def test_load_experiment_commands(self):
        names = {c.__name__ for c in cmdloader.load_commands(lab_commands)}
        self.assertEqual(
            {"scaling", "profile", "tail", "czd", "remark", "compact", "selftest"}, names
        )
