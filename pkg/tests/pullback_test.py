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
    DegenerateRHS,
    DomainMismatch,
    InvalidGrid,
    InvalidRegion,
    PreconditionFailed,
)
from carleson_lab.internal.geometry import Domain
from carleson_lab.internal.measures import (
    Estimate,
    IntegrationConfig,
    Method,
    window_measure_closed_form,
)
from carleson_lab.internal.pullback import (
    AgreementCheck,
    CarlesonProfile,
    TailAuditReport,
    TailKind,
    carleson_profile,
    eps_grid,
    pullback_window_measure,
    running_k,
    scaling_experiment,
    tail_inequality_audit,
    transfer_identity_check,
    validate_h_grid,
    validate_lambda_grid,
    xi_grid_size,
)
from carleson_lab.internal.selfmaps import (
    Constant,
    ExpQuartic,
    Identity,
    Monomial,
)

MONTE_CARLO = IntegrationConfig(method=Method.MONTE_CARLO, sample_count=200000, seed=11)
SMALL = IntegrationConfig(method=Method.MONTE_CARLO, sample_count=20000, seed=11)


def synthetic_report(ratio_of, hits=1000, checks=None):
    lambdas = (2.0, 4.0, 8.0, 16.0)
    lhs = [ratio_of(lam) * lam**-2 for lam in lambdas]
    return TailAuditReport(
        "global",
        0.0,
        "expquartic",
        2.0,
        lambdas,
        lhs,
        [0.01 * v for v in lhs],
        [hits] * len(lambdas),
        1.0,
        0.0,
        0.05,
        checks=checks or {},
    )


class WindowTest(unittest.TestCase):
    def test_identity_matches_closed_form(self):
        for xi in (1, 1j, -0.6 - 0.8j):
            estimate = pullback_window_measure(Identity(), 0.0, xi, 0.2, MONTE_CARLO)
            exact = window_measure_closed_form(0.0, 0.2)
            self.assertAlmostEqual(exact, estimate.value, delta=5 * estimate.error_bar)

    def test_rotations_do_not_change_windows(self):
        estimate = pullback_window_measure(Monomial(1, 1j), 1.0, 1, 0.1, MONTE_CARLO)
        exact = window_measure_closed_form(1.0, 0.1)
        self.assertAlmostEqual(exact, estimate.value, delta=5 * estimate.error_bar)

    def test_constant_symbol_misses_every_window(self):
        estimate = pullback_window_measure(Constant(0), 0.0, 1, 0.1, SMALL)
        self.assertEqual(0.0, estimate.value)

    def test_bad_arguments(self):
        self.assertRaises(InvalidRegion, pullback_window_measure, Identity(), 0, 0.5, 0.1, SMALL)
        self.assertRaises(InvalidRegion, pullback_window_measure, Identity(), 0, 1, 1.5, SMALL)
        self.assertRaises(
            DomainMismatch, pullback_window_measure, ExpQuartic(), 0, 1, 0.1, SMALL
        )


class ProfileTest(unittest.TestCase):
    def test_validate_h_grid(self):
        self.assertEqual((0.2, 0.1), validate_h_grid([0.2, 0.1], 0.5))
        self.assertRaises(InvalidGrid, validate_h_grid, [], 0.5)
        self.assertRaises(InvalidGrid, validate_h_grid, [0.6, 0.1], 0.5)
        self.assertRaises(InvalidGrid, validate_h_grid, [0.1, 0.2], 0.5)
        self.assertRaises(InvalidGrid, validate_h_grid, [0.1, 0.1], 0.5)

    def test_running_k(self):
        k = running_k(0.0, (0.4, 0.2, 0.1), (0.016, 0.008, 0.0))
        self.assertAlmostEqual(0.2, k[0])
        self.assertAlmostEqual(0.2, k[1])
        self.assertEqual(0.0, k[2])

    def test_profile_from_rho(self):
        profile = CarlesonProfile.from_rho(
            0.0, "identity", (0.4, 0.2, 0.1), (0.016, 0.004, 0.0), hits=(500, 10, 0)
        )
        self.assertTrue(profile.eventually_zero)
        self.assertEqual([True, False, False], profile.reliable)
        for expected, value in zip((0.1, 0.1, 0.0), profile.normalized):
            self.assertAlmostEqual(expected, value)
        k_rho = profile.k_rho
        self.assertAlmostEqual(1.0, k_rho[0])
        self.assertAlmostEqual(1.0, k_rho[1])
        self.assertIsNone(k_rho[2])
        record = profile.to_record()
        self.assertEqual(3, len(record["rows"]))
        self.assertEqual(0.0, record["rows"][2]["rho_error"])
        self.assertRaises(
            InvalidGrid, CarlesonProfile.from_rho, 0.0, "identity", (0.2, 0.1), (0.1,)
        )

    def test_xi_grid_size(self):
        self.assertEqual(64, xi_grid_size(16, 0.5))
        self.assertEqual(126, xi_grid_size(16, 0.1))
        self.assertEqual(500, xi_grid_size(500, 0.1))

    def test_identity_profile(self):
        profile = carleson_profile(Identity(), 0.0, (0.2, 0.1), 16, MONTE_CARLO)
        self.assertFalse(profile.eventually_zero)
        self.assertEqual(126, profile.xi_count)
        self.assertGreater(profile.rho[0], profile.rho[1])
        self.assertTrue(all(profile.reliable))

    def test_constant_profile_is_eventually_zero(self):
        profile = carleson_profile(Constant(0.5), 0.0, (0.2, 0.1), 16, SMALL)
        self.assertTrue(profile.eventually_zero)
        self.assertEqual((0.0, 0.0), profile.rho)

    def test_profile_arguments(self):
        self.assertRaises(InvalidGrid, carleson_profile, Identity(), 0.0, (0.2,), 4, SMALL)
        self.assertRaises(InvalidGrid, carleson_profile, Identity(), 0.0, (0.6,), 16, SMALL)


class ScalingTest(unittest.TestCase):
    def test_eps_grid(self):
        grid = eps_grid(0.05, 1.0, 3)
        self.assertEqual(3, len(grid))
        self.assertEqual(1.0, grid[0])
        self.assertAlmostEqual(math.sqrt(0.05), grid[1])
        self.assertAlmostEqual(0.05, grid[2])
        grid = eps_grid(0.1, 0.5, 2)
        self.assertEqual(1.0, grid[0])
        self.assertAlmostEqual(0.5, grid[1])
        self.assertAlmostEqual(0.1, grid[2])
        self.assertEqual((1.0,), eps_grid(1.0, 1.0, 1))
        self.assertRaises(InvalidGrid, eps_grid, 0.01, 1.0, 3)
        self.assertRaises(InvalidGrid, eps_grid, 0.5, 0.2, 3)

    def test_identity_scaling(self):
        report = scaling_experiment(Identity(), 0.0, 1, (0.2, 0.1), (1.0, 0.5), MONTE_CARLO)
        self.assertFalse(report.degenerate)
        self.assertFalse(report.alarmed)
        for h, row in zip(report.h, report.ratios):
            self.assertEqual(1.0, row[0])
            # (2 - εh)/(2 - h) for the unweighted disk
            self.assertAlmostEqual((2 - 0.5 * h) / (2 - h), row[1], delta=0.15)
        self.assertEqual(4, len(report.rows()))
        self.assertLess(report.c_emp, 1.3)

    def test_one_is_always_in_the_eps_grid(self):
        report = scaling_experiment(Identity(), 0.0, 1, (0.2,), (0.5,), SMALL)
        self.assertEqual((1.0, 0.5), report.eps)

    def test_degenerate_symbol(self):
        report = scaling_experiment(Constant(0.5), 0.0, 1, (0.2, 0.1), (1.0, 0.5), SMALL)
        self.assertTrue(report.degenerate)
        self.assertIsNone(report.c_emp)
        self.assertFalse(report.alarmed)
        self.assertEqual([None, None], report.slopes)
        self.assertTrue(report.to_record()["degenerate"])

    def test_bad_grids(self):
        self.assertRaises(
            InvalidGrid, scaling_experiment, Identity(), 0.0, 1, (0.3,), (1.0,), SMALL
        )
        self.assertRaises(
            InvalidGrid, scaling_experiment, Identity(), 0.0, 1, (0.2,), (0.01,), SMALL
        )


class TailReportTest(unittest.TestCase):
    def test_flat_ratio(self):
        report = synthetic_report(lambda lam: 0.5)
        for ratio in report.ratios:
            self.assertAlmostEqual(0.5, ratio)
        self.assertAlmostEqual(0.5, report.constant)
        slope, error = report.trend()
        self.assertAlmostEqual(0.0, slope)
        self.assertGreater(error, 0)
        self.assertFalse(report.violation)

    def test_growing_ratio(self):
        report = synthetic_report(lambda lam: 0.1 * lam)
        slope, _ = report.trend()
        self.assertAlmostEqual(1.0, slope)
        self.assertTrue(report.violation)
        self.assertTrue(report.to_record()["violation"])

    def test_trend_needs_hits(self):
        report = synthetic_report(lambda lam: 0.1 * lam, hits=5)
        self.assertEqual((None, None), report.trend())
        self.assertFalse(report.violation)

    def test_failed_check_is_a_violation(self):
        report = synthetic_report(lambda lam: 0.5, checks={"center_value": False})
        self.assertTrue(report.violation)

    def test_empty_right_hand_side(self):
        report = synthetic_report(lambda lam: 0.5)
        report.rhs = 0.0
        self.assertEqual([math.inf] * 4, report.ratios)

    def test_validate_lambda_grid(self):
        self.assertEqual((2.0, 3.0), validate_lambda_grid([2, 3]))
        self.assertRaises(InvalidGrid, validate_lambda_grid, [])
        self.assertRaises(InvalidGrid, validate_lambda_grid, [1.0, 2.0])
        self.assertRaises(InvalidGrid, validate_lambda_grid, [3.0, 2.0])


class TailAuditTest(unittest.TestCase):
    def test_global_audit(self):
        report = tail_inequality_audit(TailKind.GLOBAL, ExpQuartic(), 0.0, (1.5, 2.0, 2.5), SMALL)
        self.assertEqual("global", report.kind)
        self.assertEqual(2.0, report.exponent)
        self.assertEqual(1.0, report.rhs)
        self.assertEqual(1.0, report.extra["f1"])
        self.assertEqual(3, len(report.rows()))
        self.assertGreaterEqual(report.lhs[0], report.lhs[-1])

    def test_wrong_domains(self):
        self.assertRaises(
            DomainMismatch, tail_inequality_audit, "starting", ExpQuartic(), 0.0, (2.0,), SMALL
        )
        self.assertRaises(
            DomainMismatch, tail_inequality_audit, "global", Monomial(2), 0.0, (2.0,), SMALL
        )

    def test_preconditions(self):
        self.assertRaises(
            PreconditionFailed,
            tail_inequality_audit,
            "reduction",
            Constant(2, Domain.DISK),
            0.0,
            (2.0,),
            SMALL,
        )
        # f(1) = exp(T(1)^4) = 1 exceeds 0.9 tanh π
        self.assertRaises(
            PreconditionFailed, tail_inequality_audit, "theoclef", ExpQuartic(), 0.0, (2.0,), SMALL
        )

    def test_degenerate_right_hand_side(self):
        self.assertRaises(
            DegenerateRHS,
            tail_inequality_audit,
            "theoclef",
            Constant(0.5, Domain.HALF_PLANE),
            0.0,
            (2.0,),
            SMALL,
        )

    def test_bad_lambda_grid(self):
        self.assertRaises(
            InvalidGrid, tail_inequality_audit, "global", ExpQuartic(), 0.0, (0.5,), SMALL
        )


class AgreementTest(unittest.TestCase):
    def test_agreement(self):
        self.assertTrue(AgreementCheck(Estimate(1.0, 0.1, 10), Estimate(1.3, 0.1, 10)).agree)
        check = AgreementCheck(Estimate(1.0, 0.1, 10), Estimate(2.0, 0.1, 10), ("a", "b"))
        self.assertFalse(check.agree)
        self.assertEqual({"a", "b", "agree"}, set(check.to_record()))

    def test_transfer_identity(self):
        check = transfer_identity_check(ExpQuartic(), 0.0, 1.5, MONTE_CARLO)
        self.assertTrue(check.agree)
        self.assertGreater(check.left.value, 0)
        self.assertRaises(DomainMismatch, transfer_identity_check, Monomial(2), 0.0, 1.5, SMALL)
