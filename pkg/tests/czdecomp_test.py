#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

import math
import unittest

import numpy as np

from carleson_lab.internal import constants
from carleson_lab.internal.czdecomp import (
    CZResult,
    DyadicAverager,
    StoppingSquare,
    brute_force_stopping_squares,
    conditional_expectation,
    cz_decompose,
    homogeneity_transport_check,
    maximal_function,
    mean_value_audit,
    precision_constant,
    precision_regions,
    remark_counterexample,
    remark_polynomial_identity,
    theo_clef_chain_audit,
)
from carleson_lab.internal.exceptions import (
    DomainMismatch,
    InvalidGrid,
    InvalidRegion,
    RootAverageExceedsOne,
)
from carleson_lab.internal.geometry import Domain, DyadicIndex, Rectangle
from carleson_lab.internal.measures import IntegrationConfig
from carleson_lab.internal.selfmaps import Affine, Constant, Monomial, parse_map

CZ_MAP = parse_map("affine:0.5 @ expquartic", Domain.HALF_PLANE)
HALF = Constant(0.5, Domain.HALF_PLANE)
CFG = IntegrationConfig()


class AveragerTest(unittest.TestCase):
    def test_constant_averages(self):
        averager = DyadicAverager(HALF)
        value, error = averager.average(DyadicIndex(2, 1, 3))
        self.assertAlmostEqual(0.5, value)
        self.assertLess(error, 1e-9)
        self.assertEqual(0.5, averager.center_value(DyadicIndex(0, 0, 0)))
        # Ω itself is too wide for a Harnack disk
        self.assertEqual(math.inf, averager.sup_bound(DyadicIndex(0, 0, 0)))
        self.assertLess(averager.sup_bound(DyadicIndex(3, 7, 2)), 1)

    def test_arguments(self):
        self.assertRaises(DomainMismatch, DyadicAverager, Monomial(2))
        self.assertRaises(InvalidGrid, DyadicAverager, HALF, CFG, 0.0)

    def test_conditional_expectation(self):
        table = conditional_expectation(HALF, 2)
        self.assertEqual((4, 4), table.values.shape)
        np.testing.assert_allclose(0.5, table.values)
        self.assertAlmostEqual(0.5, table.average(DyadicIndex(2, 1, 1)))
        self.assertAlmostEqual(0.5, table(1.3 - 0.2j))
        self.assertRaises(InvalidGrid, table.average, DyadicIndex(1, 0, 0))
        parent = table.coarsen()
        self.assertEqual(1, parent.n)
        self.assertEqual((2, 2), parent.values.shape)
        self.assertRaises(InvalidGrid, parent.coarsen().coarsen)
        self.assertRaises(InvalidGrid, conditional_expectation, HALF, 13)
        self.assertRaises(InvalidGrid, conditional_expectation, HALF, -1)

    def test_coarsening_matches_direct_averages(self):
        averager = DyadicAverager(CZ_MAP)
        fine = conditional_expectation(CZ_MAP, 3, averager=averager)
        direct = conditional_expectation(CZ_MAP, 2, averager=averager)
        np.testing.assert_allclose(direct.values, fine.coarsen().values, atol=1e-5)

    def test_maximal_function(self):
        self.assertAlmostEqual(0.5, maximal_function(HALF, 1 + 0.5j, n_max=3))
        # |f| approaches e/2 at the origin
        self.assertGreater(maximal_function(CZ_MAP, 0.01 + 0.01j, n_max=6), 1)
        self.assertLess(maximal_function(CZ_MAP, 1.9 + 0.9j, n_max=3), 1)
        self.assertRaises(InvalidGrid, maximal_function, HALF, 1, -1)


class DecompositionTest(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.averager = DyadicAverager(CZ_MAP)
        cls.result = cz_decompose(CZ_MAP, n_max=6, averager=cls.averager)

    def test_matches_brute_force(self):
        oracle = set(brute_force_stopping_squares(CZ_MAP, 6, averager=self.averager))
        mismatch = oracle ^ set(self.result.indices)
        self.assertTrue(mismatch <= set(self.result.ambiguous))
        self.assertTrue(self.result.squares)

    def test_stopping_squares(self):
        self.assertTrue(self.result.disjoint())
        self.assertGreater(self.result.pruned, 0)
        for square in self.result.squares:
            self.assertGreater(square.average - square.error, 1)
            self.assertLessEqual(square.average, 4 + square.error)
        self.assertEqual(self.result.indices, sorted(self.result.indices))

    def test_pruning_keeps_the_squares(self):
        full = cz_decompose(CZ_MAP, n_max=6, prune=False, averager=self.averager)
        self.assertEqual(self.result.indices, full.indices)
        self.assertEqual(0, full.pruned)
        self.assertGreater(full.visited, self.result.visited)

    def test_record(self):
        record = self.result.to_record()
        self.assertEqual(len(self.result.squares), len(record["squares"]))
        self.assertAlmostEqual(self.result.area, sum(i.bounds.area for i in self.result.indices))
        self.assertIn("visited", record["residual"])

    def test_root_above_one(self):
        self.assertRaises(RootAverageExceedsOne, cz_decompose, Constant(2, Domain.HALF_PLANE))
        self.assertRaises(InvalidGrid, cz_decompose, HALF, CFG, -1)

    def test_nothing_to_stop(self):
        result = cz_decompose(HALF, n_max=3)
        self.assertEqual([], result.squares)
        self.assertEqual([], result.residual)
        self.assertEqual(0.0, result.area)

    def test_disjoint_detects_nesting(self):
        square = StoppingSquare(DyadicIndex(1, 0, 0), 1.5, 0.0, 1.0)
        child = StoppingSquare(DyadicIndex(2, 0, 0), 1.5, 0.0, 1.0)
        self.assertFalse(CZResult("m", [square, child], 2, 1e-6).disjoint())
        self.assertTrue(CZResult("m", [child], 2, 1e-6).disjoint())

    def test_precision_regions(self):
        report = precision_regions(self.result, 0.0)
        self.assertEqual(len(self.result.squares), len(report.regions))
        self.assertTrue(report.passed)
        for region in report.regions:
            self.assertTrue(region.contained)
        self.assertGreater(report.c_mu, 0)
        self.assertLess(report.c_mu, 1)
        self.assertRaises(
            InvalidRegion, precision_regions, CZResult("m", [], 2, 1e-6), 0.0
        )

    def test_chain_needs_a_lambda_grid(self):
        self.assertRaises(InvalidGrid, theo_clef_chain_audit, CZ_MAP, 0.0, (0.5,))


class MeanValueTest(unittest.TestCase):
    def test_constant(self):
        audit = mean_value_audit(HALF, DyadicIndex(1, 0, 1))
        self.assertAlmostEqual(4 / math.pi, audit.ratio)
        self.assertTrue(audit.lower_ok)

    def test_identity(self):
        # avg |w| >= |avg w| = |c|
        audit = mean_value_audit(Affine(1), DyadicIndex(0, 0, 0))
        self.assertTrue(audit.lower_ok)
        self.assertEqual(1.0, audit.center_value)

    def test_arguments(self):
        self.assertRaises(InvalidRegion, mean_value_audit, HALF, Rectangle(-1, 1, 0, 1))
        self.assertRaises(DomainMismatch, mean_value_audit, Monomial(2), DyadicIndex(0, 0, 0))


class RemarkTest(unittest.TestCase):
    def test_polynomial_identity(self):
        self.assertAlmostEqual(constants.REMARK_SLOPE, remark_polynomial_identity(), delta=1e-10)

    def test_counterexample(self):
        report = remark_counterexample(np.linspace(0.05, 0.5, 10))
        self.assertLessEqual(report.slope_error, 0.05)
        self.assertIsNotNone(report.witness)
        self.assertLess(report.sigma[0], 1)
        self.assertEqual(10, len(report.rows()))

    def test_grid(self):
        self.assertRaises(InvalidGrid, remark_counterexample, [0.6])
        self.assertRaises(InvalidGrid, remark_counterexample, [])


class HomogeneityTest(unittest.TestCase):
    def test_identity_scales(self):
        check = homogeneity_transport_check(Affine(1), 0.0, 0.5, 0.5)
        self.assertTrue(check.agree)
        self.assertEqual({"scaled", "unit", "agree"}, set(check.to_record()))
        self.assertRaises(InvalidRegion, homogeneity_transport_check, Affine(1), 0.0, 0.5, 0.0)

    def test_precision_constant(self):
        self.assertGreater(precision_constant(0.0), 0)
