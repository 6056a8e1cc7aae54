#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

import argparse

from carleson_lab.internal.config import FORMATS
from carleson_lab.internal.context import Context
from carleson_lab.internal.exceptions import ArgsValidationError

# global options that are configuration keys as well
GLOBAL_CONFIG_KEYS = ("seed", "out", "format", "threads")


class PluginInterface:
    """
    Customization point of the command line: the context object, extra
    commands, the global options and their validation, logging.
    """

    def create_context(self):
        """
        Must return an instance of `Context` (or of a subclass).
        """
        return Context()

    def validate_args(self, args):
        """
        Called with the argparse result before the command runs; raise
        `ArgsValidationError` to abort.
        """
        seed = getattr(args, "seed", None)
        if seed is not None and seed < 0:
            raise ArgsValidationError("--seed must be nonnegative", seed=seed)
        threads = getattr(args, "threads", None)
        if threads is not None and threads < 1:
            raise ArgsValidationError("--threads must be positive", threads=threads)

    def get_commands(self):
        """
        Extra `Command` instances, registered before the command packages.
        """
        return []

    def get_opts_parser(self, add_help=True):
        """
        Builds the ArgumentParser holding the global options.
        """
        epilog = (
            "Every command flag is also a configuration key: flags override the "
            "--config document, which overrides the defaults of the command. "
            "LIST types are given as space separated values on the command "
            "line and comma separated in config documents."
        )
        opts_parser = argparse.ArgumentParser(
            description="Numerical experiments on Carleson measures, "
            "composition operators and dyadic decompositions",
            epilog=epilog,
            formatter_class=argparse.ArgumentDefaultsHelpFormatter,
            add_help=add_help,
        )
        opts_parser.add_argument(
            "--verbose",
            "-v",
            action="count",
            default=0,
            help="Increase verbosity, can be specified multiple times",
        )
        opts_parser.add_argument(
            "--stderr",
            "-s",
            action="store_true",
            help="By default the logging output goes to a temporary file. "
            "This sends it to stderr instead",
        )
        opts_parser.add_argument(
            "--config", "-c", default=None, metavar="PATH", help="Config document"
        )
        opts_parser.add_argument(
            "--seed", type=int, default=None, help="Root seed of every random stream"
        )
        opts_parser.add_argument(
            "--out", "-o", default=None, metavar="PATH", help="Report file, stdout if unset"
        )
        opts_parser.add_argument(
            "--format", choices=FORMATS, default=None, help="Report format (json)"
        )
        opts_parser.add_argument(
            "--threads",
            type=int,
            default=None,
            help="Worker threads, CARLESON_LAB_THREADS if unset",
        )
        opts_parser.add_argument(
            "--no-color", action="store_true", help="Disable coloured output"
        )
        return opts_parser

    def setup_logging(self, root_logger, args):
        """
        Override this to configure your own logging. Return your root logger
        to skip the default setup.
        """
        return None
