#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

import os
import tempfile
import unittest
from unittest import mock

from carleson_lab.internal import constants
from carleson_lab.internal.config import (
    CONFIG_KEYS,
    ExperimentConfig,
    load_config,
    parse_config,
)
from carleson_lab.internal.exceptions import (
    ConfigError,
    InvalidGrid,
    ParseError,
    UnknownSymbol,
)
from carleson_lab.internal.geometry import Domain
from carleson_lab.internal.measures import Method
from carleson_lab.internal.orlicz import Variant
from carleson_lab.internal.parser import parse_config_text


class ConfigTextTest(unittest.TestCase):
    def test_assignments(self):
        text = """
        # a comment
        alpha = 1.5
        symbol = "monomial:2"   # trailing comment
        h-min = 0.01
        map = affine:0.5 @ expquartic
        """
        self.assertEqual(
            [
                (3, "alpha", "1.5"),
                (4, "symbol", "monomial:2"),
                (5, "h_min", "0.01"),
                (6, "map", "affine:0.5 @ expquartic"),
            ],
            parse_config_text(text),
        )

    def test_broken_line(self):
        with self.assertRaises(ParseError) as ctx:
            parse_config_text("alpha = 1\nthis is not an assignment\n")
        self.assertEqual(2, ctx.exception.line)


class ExperimentConfigTest(unittest.TestCase):
    def test_defaults(self):
        cfg = parse_config()
        self.assertEqual("selftest", cfg.command)
        self.assertEqual(0.0, cfg.alpha)
        self.assertEqual(constants.DEFAULT_SEED, cfg.seed)
        # selftest runs on a smaller sample
        self.assertEqual(200000, cfg.sample_count)
        self.assertEqual(Method.AUTO, cfg.integration.method)
        self.assertEqual((), cfg.only)

    def test_command_defaults(self):
        cfg = parse_config(command="scaling")
        self.assertEqual(3, len(cfg.h_grid))
        for expected, h in zip((0.2, 0.1, 0.05), cfg.h_grid):
            self.assertAlmostEqual(expected, h)

        cfg = parse_config(command="czd")
        self.assertEqual("affine:0.5 @ expquartic", cfg.map)
        self.assertEqual(1.5, cfg.lambda_min)
        self.assertEqual(Domain.HALF_PLANE, cfg.holo_map.domain)

    def test_precedence(self):
        text = 'alpha = 1\nsymbol = "monomial:2"\nseed = 11\n'
        cfg = parse_config(text, {"alpha": 2.5, "seed": None}, "profile")
        # flags win over the document, unset flags leave it alone
        self.assertEqual(2.5, cfg.alpha)
        self.assertEqual(11, cfg.seed)
        self.assertEqual("monomial:2", cfg.symbol)
        self.assertEqual("monomial:2", cfg.holo_symbol.descriptor)

    def test_typed_values(self):
        cfg = parse_config("prune = off\nonly = dyadic, cz\nout = none\nthreads = 3\n")
        self.assertFalse(cfg.prune)
        self.assertEqual(("dyadic", "cz"), cfg.only)
        self.assertIsNone(cfg.out)
        self.assertEqual(3, cfg.threads)
        self.assertEqual(3, cfg.integration.workers)

    def test_unknown_key(self):
        with self.assertRaises(ParseError) as ctx:
            parse_config("alpha = 1\nsymbl = identity\n")
        self.assertEqual(2, ctx.exception.line)
        self.assertEqual("symbl", ctx.exception.key)
        self.assertIn("Did you mean symbol?", ctx.exception.message)

    def test_bad_value(self):
        with self.assertRaises(ParseError) as ctx:
            parse_config("h_count = many\n")
        self.assertEqual("h_count", ctx.exception.key)
        self.assertEqual(1, ctx.exception.line)

    def test_validation(self):
        self.assertRaises(ConfigError, parse_config, "alpha = -1\n")
        self.assertRaises(ConfigError, parse_config, "", {"kind": "globl"})
        self.assertRaises(ConfigError, parse_config, "", {"format": "xml"})
        self.assertRaises(ConfigError, parse_config, "", {"threads": 0})
        self.assertRaises(InvalidGrid, parse_config, "", {"h_min": 0.3, "h_max": 0.2})
        self.assertRaises(InvalidGrid, parse_config, "", {"lambda_min": 1.0})
        self.assertRaises(InvalidGrid, parse_config, "", {"t_max": 0.6})
        self.assertRaises(InvalidGrid, parse_config, "", {"eps_min": 0.01})
        self.assertRaises(InvalidGrid, parse_config, "", {"xi_count": 0})
        # scaling windows stay small, profiles may be larger
        self.assertRaises(InvalidGrid, parse_config, "", {"h_max": 0.3}, "scaling")
        self.assertEqual(0.3, parse_config("", {"h_max": 0.3}, "profile").h_max)

    def test_descriptors_resolved_eagerly(self):
        with self.assertRaises(UnknownSymbol) as ctx:
            parse_config("", {"symbol": "monomail:2"})
        self.assertEqual("symbol", ctx.exception.details["key"])
        self.assertIn("monomial", ctx.exception.message)

        with self.assertRaises(ParseError) as ctx:
            parse_config("", {"map": "affine:"})
        self.assertEqual("map", ctx.exception.key)

        # the half-plane map is no D→D symbol
        self.assertRaises(UnknownSymbol, parse_config, "", {"symbol": "affine:2"})
        self.assertRaises(UnknownSymbol, parse_config, "", {"orlicz": "power:0.5"})

    def test_map_domain_follows_tail_kind(self):
        cfg = parse_config("", {"kind": "starting", "map": "affine:0.5 @ cayley"}, "tail")
        self.assertEqual(Domain.DISK, cfg.map_domain)
        self.assertEqual(Domain.DISK, cfg.holo_map.domain)
        cfg = parse_config("", {"kind": "global"}, "tail")
        self.assertEqual(Domain.HALF_PLANE, cfg.holo_map.domain)

    def test_grids(self):
        cfg = parse_config("", {"lambda_min": 2, "lambda_max": 100, "lambda_count": 5})
        self.assertEqual(5, len(cfg.lambdas))
        self.assertEqual(sorted(cfg.lambdas), list(cfg.lambdas))
        self.assertAlmostEqual(2.0, cfg.lambdas[0])
        self.assertAlmostEqual(100.0, cfg.lambdas[-1])

        cfg = parse_config("", {"eps_min": 0.1, "eps_count": 3})
        self.assertEqual(1.0, cfg.eps[0])
        self.assertAlmostEqual(0.1, cfg.eps[-1])

        cfg = parse_config("", {"t_min": 0.1, "t_max": 0.5, "t_count": 5})
        self.assertEqual(5, len(cfg.t_grid))
        self.assertAlmostEqual(0.5, cfg.t_grid[-1])

    def test_variants(self):
        self.assertEqual(
            [Variant.NECESSARY, Variant.SUFFICIENT], parse_config().variants
        )
        self.assertEqual(
            [Variant.SUFFICIENT], parse_config("", {"variant": "sufficient"}).variants
        )

    def test_threads_from_environment(self):
        with mock.patch.dict(os.environ, {constants.THREADS_ENV_VAR: "4"}):
            self.assertEqual(4, parse_config().threads)
            self.assertEqual(2, parse_config("", {"threads": 2}).threads)

    def test_record(self):
        record = parse_config("", {"only": ["cz"]}).to_record()
        self.assertEqual(set(CONFIG_KEYS) | {"command"}, set(record))
        self.assertEqual(["cz"], record["only"])

    def test_replace(self):
        cfg = ExperimentConfig()
        self.assertEqual(1.0, cfg.replace(alpha=1.0).alpha)
        self.assertRaises(ConfigError, cfg.replace, alpha=-3.0)

    def test_load_config(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "lab.conf")
            with open(path, "w") as f:
                f.write("alpha = 0.5\nh_count = 4\n")
            cfg = load_config(path, {"h_count": 6}, "profile")
            self.assertEqual(0.5, cfg.alpha)
            self.assertEqual(6, cfg.h_count)
            self.assertRaises(
                ConfigError, load_config, os.path.join(tmp, "missing.conf")
            )
