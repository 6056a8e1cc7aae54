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
from carleson_lab.internal.exceptions import (
    DomainMismatch,
    IncompatibleChain,
    ParseError,
    PreconditionFailed,
    UnknownSymbol,
)
from carleson_lab.internal.geometry import ComplexPoint, Domain
from carleson_lab.internal.selfmaps import (
    CATALOG,
    SHARP_GROWTH_CONSTANT,
    Affine,
    AuditSample,
    CayleyConjugate,
    CayleyMap,
    Composition,
    ExpQuartic,
    Monomial,
    Transfer,
    codomain_audit,
    growth_bound_audit,
    harnack_audit,
    parse_map,
    parse_symbol,
    schwarz_pick_audit,
    schwarz_step_audit,
    transfer,
)

DISK_POINTS = np.array([0, 0.5, -0.3 + 0.4j, 0.9j])
HALF_PLANE_POINTS = np.array([1, 0.2 - 3j, 5 + 1j])


def catalog_maps():
    for entry in CATALOG:
        for domain in (Domain.DISK, Domain.HALF_PLANE):
            try:
                yield entry, parse_map(entry.example, domain)
                break
            except UnknownSymbol:
                continue


class ParseMapTest(unittest.TestCase):
    def test_catalog_examples(self):
        maps = list(catalog_maps())
        self.assertEqual(len(CATALOG), len(maps))
        for entry, m in maps:
            self.assertTrue(entry.certificate, entry.name)

    def test_descriptors_read_back(self):
        for _, m in catalog_maps():
            again = parse_map(m.descriptor, m.domain)
            points = DISK_POINTS if m.domain is Domain.DISK else HALF_PLANE_POINTS
            np.testing.assert_allclose(
                m.evaluate_array(points), again.evaluate_array(points), err_msg=m.descriptor
            )

    def test_composition_reads_right_to_left(self):
        m = parse_map("affine:0.5 @ cayley", Domain.DISK)
        self.assertEqual(Domain.DISK, m.domain)
        self.assertEqual(Domain.HALF_PLANE, m.codomain)
        self.assertAlmostEqual(0.5, complex(m.evaluate_array(np.array([0j]))[0]).real)
        self.assertEqual("affine:0.5 @ cayley", m.descriptor)

    def test_conjugation(self):
        m = parse_map("conj(affine:2)", Domain.DISK)
        self.assertIsInstance(m, CayleyConjugate)
        self.assertEqual(Domain.DISK, m.codomain)
        # T(2 T(0)) = T(2) = -1/3
        self.assertAlmostEqual(-1 / 3, complex(m.evaluate_array(np.array([0j]))[0]).real)

    def test_certification_failures(self):
        for descriptor in (
            "monomial:0",
            "monomial:1.5",
            "blaschke:1.5",
            "polynomial:0.5,0.6",
            "lens:1.5",
            "constant:-2",
            "monomial:2,2",
        ):
            self.assertRaises(UnknownSymbol, parse_map, descriptor, Domain.DISK)
        self.assertRaises(UnknownSymbol, parse_map, "affine:-1", Domain.HALF_PLANE)
        self.assertRaises(UnknownSymbol, parse_map, "affine:1,-1", Domain.HALF_PLANE)

    def test_broken_chains(self):
        self.assertRaises(UnknownSymbol, parse_map, "exp", Domain.DISK)
        self.assertRaises(UnknownSymbol, parse_map, "monomial:2 @ affine:1", Domain.HALF_PLANE)
        self.assertRaises(UnknownSymbol, parse_symbol, "affine:0.5 @ cayley")

    def test_unknown_names(self):
        with self.assertRaises(UnknownSymbol) as ctx:
            parse_map("blaschk:0.5")
        self.assertIn("Did you mean blaschke?", ctx.exception.message)
        self.assertRaises(ParseError, parse_map, "monomial:2 @")

    def test_constants_pick_their_codomain(self):
        self.assertEqual(Domain.DISK, parse_map("constant:0.5").codomain)
        self.assertEqual(Domain.HALF_PLANE, parse_map("constant:2").codomain)


class HoloMapTest(unittest.TestCase):
    def test_evaluate(self):
        value = Monomial(2).evaluate(ComplexPoint.of(0.5, Domain.DISK))
        self.assertEqual(Domain.DISK, value.domain)
        self.assertAlmostEqual(0.25, value.re)
        self.assertRaises(
            DomainMismatch, Monomial(2).evaluate, ComplexPoint.of(0.5, Domain.HALF_PLANE)
        )
        self.assertRaises(DomainMismatch, Monomial(2).evaluate, ComplexPoint.of(1.5))

    def test_matmul(self):
        m = Affine(2) @ CayleyMap(Domain.DISK)
        self.assertIsInstance(m, Composition)
        self.assertEqual((Domain.DISK, Domain.HALF_PLANE), (m.domain, m.codomain))
        # nested compositions are flattened
        self.assertEqual(3, len((Affine(1) @ m).maps))
        self.assertRaises(IncompatibleChain, lambda: Monomial(2) @ Affine(1))

    def test_transfers(self):
        g = parse_map("affine:0.5 @ cayley", Domain.DISK)
        f = transfer(g, Transfer.COMPOSE_WITH_T)
        self.assertEqual(Domain.HALF_PLANE, f.domain)
        one = np.array([1 + 0j])
        self.assertAlmostEqual(
            complex(g.evaluate_array(np.array([0j]))[0]), complex(f.evaluate_array(one)[0])
        )
        f = transfer(g, Transfer.COMPOSE_WITH_E)
        self.assertAlmostEqual(
            complex(g.evaluate_array(np.array([constants.E_OF_ONE]))[0]),
            complex(f.evaluate_array(one)[0]),
        )
        conj = transfer(Affine(2), Transfer.CONJUGATE_BY_T)
        self.assertEqual(Domain.DISK, conj.domain)
        self.assertRaises(IncompatibleChain, transfer, Affine(2), Transfer.COMPOSE_WITH_T)


class AuditTest(unittest.TestCase):
    def test_schwarz_pick(self):
        for _, m in catalog_maps():
            audit = schwarz_pick_audit(m, 500, 3)
            self.assertLessEqual(audit.max_value, 1 + 1e-9, m.descriptor)
            self.assertGreater(audit.count, 0)

    def test_harnack(self):
        audit = harnack_audit(ExpQuartic(), 1.0, 0.25, 2000, 3)
        self.assertTrue(audit.passed)
        self.assertAlmostEqual(5 / 3, audit.extra["M_s"])
        self.assertRaises(PreconditionFailed, harnack_audit, ExpQuartic(), 1.0, 1.5, 10, 3)
        self.assertRaises(IncompatibleChain, harnack_audit, Monomial(2), 0, 0.25, 10, 3)
        self.assertRaises(DomainMismatch, harnack_audit, ExpQuartic(), -1.0, 0.25, 10, 3)

    def test_growth_bound(self):
        audit = growth_bound_audit(CayleyMap(Domain.DISK))
        self.assertTrue(audit.passed)
        self.assertAlmostEqual(1 / SHARP_GROWTH_CONSTANT**2, audit.ratio)
        # z -> T(-z) attains the sharp constant
        extremal = CayleyMap(Domain.DISK) @ Monomial(1, -1)
        audit = growth_bound_audit(extremal)
        self.assertAlmostEqual(1.0, audit.ratio)
        self.assertTrue(audit.passed)
        self.assertAlmostEqual(
            SHARP_GROWTH_CONSTANT * math.tanh(math.pi), audit.tanh_pi_ratio
        )
        self.assertAlmostEqual(1 / math.tanh(math.pi / 2), SHARP_GROWTH_CONSTANT)
        self.assertRaises(IncompatibleChain, growth_bound_audit, Monomial(2))

    def test_schwarz_step(self):
        g = parse_map("affine:0.1 @ cayley", Domain.DISK)
        audit = schwarz_step_audit(g, 0.5, 20000, 3)
        self.assertGreater(audit.count, 0)
        self.assertTrue(audit.passed)
        self.assertGreater(audit.min_value, 0.5)
        self.assertTrue(audit.strict)
        self.assertRaises(
            PreconditionFailed,
            schwarz_step_audit,
            parse_map("affine:1 @ cayley", Domain.DISK),
            0.5,
            100,
            3,
        )

    def test_strict_lower_bound(self):
        on_bound = AuditSample("schwarz-step", 1, 0.5, None, 0.5, None)
        self.assertTrue(on_bound.passed)
        on_bound.strict = True
        self.assertFalse(on_bound.passed)
        on_bound.min_value = 0.5 + 1e-12
        self.assertTrue(on_bound.passed)

    def test_codomain(self):
        for descriptor, domain in (
            ("lens:0.5", Domain.DISK),
            ("blaschke:0.5,0.3+0.1i", Domain.DISK),
            ("expquartic", Domain.HALF_PLANE),
            ("conj(affine:2) @ exp", Domain.HALF_PLANE),
        ):
            audit = codomain_audit(parse_map(descriptor, domain), 2000, 3)
            self.assertEqual(1.0, audit.min_value, descriptor)
            self.assertTrue(audit.passed)
