#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

import math
import unittest

from carleson_lab.internal.exceptions import (
    InvalidProfile,
    NegativeInput,
    ProfileTooNoisy,
    UnknownSymbol,
)
from carleson_lab.internal.orlicz import (
    ORLICZ_CATALOG,
    Direction,
    ExpPower,
    Power,
    PowerLog,
    Variant,
    Verdict,
    compactness_indicator,
    compare_variants,
    convexity_audit,
    growth_audit,
    parse_orlicz,
    psi,
)
from carleson_lab.internal.pullback import CarlesonProfile

H_GRID = (0.2, 0.02, 0.002)


def profile(exponent, alpha=0.0, noise=0.0, rho=None):
    if rho is None:
        rho = [h**exponent for h in H_GRID]
    return CarlesonProfile.from_rho(
        alpha, "test", H_GRID, rho, [noise * r for r in rho]
    )


class PsiTest(unittest.TestCase):
    def test_power(self):
        self.assertEqual(9.0, psi(Power(2), 3))
        self.assertAlmostEqual(3.0, psi(Power(2), 9, Direction.INVERSE))
        self.assertEqual(0.0, psi(Power(3), 0))

    def test_exp_power(self):
        self.assertAlmostEqual(math.e - 1, psi(ExpPower(1), 1))
        self.assertAlmostEqual(1.0, psi(ExpPower(1), math.e - 1, "inverse"))
        self.assertAlmostEqual(2.0, psi(ExpPower(2), math.expm1(4), "inverse"))

    def test_bracketed_inverse(self):
        function = PowerLog(2, 1)
        for x in (0.01, 1.0, 3.7, 250.0):
            y = psi(function, x)
            self.assertAlmostEqual(x, psi(function, y, Direction.INVERSE), delta=1e-9 * x)
        self.assertAlmostEqual(4.0, PowerLog(2).inverse(16.0))
        self.assertEqual(0.0, PowerLog(2).inverse(0.0))

    def test_edges(self):
        self.assertEqual(math.inf, psi(Power(2), math.inf, Direction.INVERSE))
        self.assertRaises(NegativeInput, psi, Power(2), -1)
        self.assertRaises(NegativeInput, psi, Power(2), math.nan)


class ParseTest(unittest.TestCase):
    def test_catalog(self):
        for name, _, _, example in ORLICZ_CATALOG:
            function = parse_orlicz(example)
            self.assertEqual(example, function.descriptor)
            self.assertTrue(function.descriptor.startswith(name))

    def test_rejections(self):
        for descriptor in ("power:0.5", "exppower:0.5", "powerlog:2,-1", "power", "powerlog:2,1,3"):
            self.assertRaises(UnknownSymbol, parse_orlicz, descriptor)
        with self.assertRaises(UnknownSymbol) as ctx:
            parse_orlicz("powr:2")
        self.assertIn("Did you mean power?", ctx.exception.message)

    def test_audits(self):
        for _, _, _, example in ORLICZ_CATALOG:
            function = parse_orlicz(example)
            self.assertTrue(convexity_audit(function, seed=3).passed, example)
            growth = growth_audit(function)
            self.assertTrue(growth.passed, example)
            self.assertTrue(growth.extra["zero_ok"])


class IndicatorTest(unittest.TestCase):
    def test_necessary_indicator_formula(self):
        verdict = compactness_indicator(Power(2), 1.0, profile(3.5, alpha=1.0))
        # Ψ^-1(1/h^3) / Ψ^-1(1/ρ) = sqrt(ρ) / h^1.5 for Ψ(t) = t^2
        for h, value in zip(H_GRID, verdict.indicator):
            self.assertAlmostEqual(math.sqrt(h**3.5) / h**1.5, value, delta=1e-12)

    def test_compact(self):
        # ρ(h) = h^4 gives the indicator h for Ψ(x) = x^2
        verdict = compactness_indicator(Power(2), 0.0, profile(4))
        for h, value in zip(H_GRID, verdict.indicator):
            self.assertAlmostEqual(h, value)
        self.assertEqual(Verdict.COMPACT, verdict.verdict)
        self.assertAlmostEqual(1.0, verdict.trend_slope)

    def test_not_compact(self):
        verdict = compactness_indicator(Power(2), 0.0, profile(2), Variant.SUFFICIENT)
        self.assertEqual(Verdict.NOT_COMPACT, verdict.verdict)
        self.assertEqual("not-compact-indicated", verdict.to_record()["verdict"])

    def test_inconclusive(self):
        verdict = compactness_indicator(Power(2), 0.0, profile(2.6))
        self.assertEqual(Verdict.INCONCLUSIVE, verdict.verdict)

    def test_eventually_zero(self):
        verdict = compactness_indicator(Power(2), 0.0, profile(None, rho=[0.04, 0.0, 0.0]))
        self.assertEqual([1.0, 0.0, 0.0], [round(v, 12) for v in verdict.indicator])
        self.assertEqual(Verdict.COMPACT, verdict.verdict)

    def test_noisy_profile(self):
        noisy = profile(4, noise=0.5)
        verdict = compactness_indicator(Power(2), 0.0, noisy)
        self.assertEqual(Verdict.INCONCLUSIVE, verdict.verdict)
        self.assertRaises(
            ProfileTooNoisy, compactness_indicator, Power(2), 0.0, noisy, strict=True
        )

    def test_invalid_profiles(self):
        self.assertRaises(InvalidProfile, compactness_indicator, Power(2), 1.0, profile(4))
        short = CarlesonProfile.from_rho(0.0, "test", (0.2, 0.1), (0.01, 0.001))
        self.assertRaises(InvalidProfile, compactness_indicator, Power(2), 0.0, short)

    def test_variants_are_ordered(self):
        for exponent in (2, 2.6, 4):
            for function in (Power(2), ExpPower(1), PowerLog(2, 1)):
                comparison = compare_variants(function, 0.0, profile(exponent))
                self.assertTrue(comparison.ordered)
        comparison = compare_variants(Power(2), 0.0, profile(4))
        self.assertTrue(comparison.consistent)
        self.assertEqual(
            {"necessary", "sufficient", "ordered", "consistent"}, set(comparison.to_record())
        )
