#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

import argparse

from prettytable import PrettyTable
from termcolor import colored, cprint

from carleson_lab.internal.cmdbase import Command, report_error
from carleson_lab.internal.exceptions import CarlesonLabError
from carleson_lab.internal.io.report import (
    determinism_hash,
    read_report,
    result_rows,
    summary_table,
)
from carleson_lab.internal.orlicz import ORLICZ_CATALOG
from carleson_lab.internal.selfmaps import CATALOG


class _BuiltinCommand(Command):
    HELP = ""
    NAME = ""

    def __init__(self):
        super().__init__()
        self._built_in = True

    def get_command_names(self):
        return [self.NAME]

    def get_help(self, cmd, *args):
        return self.HELP

    def _add_parser(self, parser) -> argparse.ArgumentParser:
        return parser.add_parser(self.NAME, help=self.HELP)


class CatalogCommand(_BuiltinCommand):
    NAME = "catalog"
    HELP = "Lists the certified map families and Orlicz functions"

    async def add_arguments(self, parser):
        self._add_parser(parser)

    async def run_cli(self, args):
        maps = PrettyTable(["Family", "Descriptor", "Domains", "Certificate", "Example"])
        maps.align = "l"
        for entry in CATALOG:
            maps.add_row(
                [
                    colored(entry.name, "magenta"),
                    entry.signature,
                    entry.domains,
                    entry.certificate,
                    entry.example,
                ]
            )
        orlicz = PrettyTable(["Family", "Descriptor", "Definition", "Example"])
        orlicz.align = "l"
        for name, signature, definition, example in ORLICZ_CATALOG:
            orlicz.add_row([colored(name, "magenta"), signature, definition, example])

        cprint("Holomorphic maps", "yellow")
        print(maps)
        cprint("Orlicz functions", "yellow")
        print(orlicz)
        return 0


class ReportCommand(_BuiltinCommand):
    NAME = "report"
    HELP = "Re-reads a JSON or CSV report and prints its rows"

    async def add_arguments(self, parser):
        subparser = self._add_parser(parser)
        subparser.add_argument("path", help="Report written by an experiment command")

    async def run_cli(self, args):
        try:
            record = read_report(args.path)
        except CarlesonLabError as e:
            return report_error(e)
        except ValueError as e:
            cprint("{} is not a report: {}".format(args.path, e), "red")
            return 1

        cprint(
            "{} (status {}, seed {})".format(
                record.get("command"), record.get("status"), record.get("seed")
            ),
            "yellow",
        )
        rows = record["rows"] if "rows" in record else result_rows(record.get("result"))
        print(summary_table(rows))
        if "result" in record and record.get("determinism_hash"):
            if determinism_hash(record) != record["determinism_hash"]:
                cprint("determinism hash mismatch", "red")
                return 1
        return 0
