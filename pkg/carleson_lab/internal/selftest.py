#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

"""
The invariant suite run by `carleson-lab selftest`.

Each check is a small, fully seeded experiment with a pass/fail outcome.
A check that raises is recorded as failed with the structured error, the
suite keeps going.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Sequence, Tuple

import numpy as np

from carleson_lab.internal import constants
from carleson_lab.internal.czdecomp import (
    DyadicAverager,
    brute_force_stopping_squares,
    cz_decompose,
    remark_counterexample,
    remark_polynomial_identity,
)
from carleson_lab.internal.exceptions import CarlesonLabError, ConfigError
from carleson_lab.internal.geometry import (
    DyadicIndex,
    Domain,
    RightHalfPlane,
    UnitDisk,
    half_plane_distance_array,
    sample_pairs_in_square,
)
from carleson_lab.internal.helpers import find_approx, suggestions_msg
from carleson_lab.internal.measures import (
    IntegrationConfig,
    Method,
    bergman,
    integrate,
    tau,
    window_measure_closed_form,
)
from carleson_lab.internal.orlicz import (
    ORLICZ_CATALOG,
    Verdict,
    compare_variants,
    convexity_audit,
    growth_audit,
    parse_orlicz,
)
from carleson_lab.internal.pullback import (
    CarlesonProfile,
    carleson_profile,
    pullback_window_measure,
    transfer_identity_check,
)
from carleson_lab.internal.selfmaps import (
    CATALOG,
    growth_bound_audit,
    harnack_audit,
    parse_map,
    parse_symbol,
    schwarz_pick_audit,
)
from carleson_lab.internal.sampling import StreamFactory

logger = logging.getLogger(__name__)

NORMALIZATION_ALPHAS = (-0.5, 0.0, 1.0, 2.5)
WINDOW_CASES = ((0.0, 0.05), (0.0, 0.2), (1.0, 0.1), (2.5, 0.2))
CZ_MAP = "affine:0.5 @ expquartic"
CZ_DEPTH = 4
GROWTH_MAPS = ("cayley", "affine:2 @ cayley", "conj(monomial:2) @ cayley")


@dataclass
class SelftestCheck:
    name: str
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)

    def to_record(self) -> Dict[str, Any]:
        return {"check": self.name, "passed": self.passed, **self.details}


@dataclass
class SelftestReport:
    checks: List[SelftestCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed(self) -> List[str]:
        return [c.name for c in self.checks if not c.passed]

    def rows(self) -> List[Dict[str, Any]]:
        return [{"check": c.name, "passed": c.passed} for c in self.checks]

    def to_record(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "failed": self.failed,
            "checks": [c.to_record() for c in self.checks],
            "rows": self.rows(),
        }


def check_normalization(cfg: IntegrationConfig) -> SelftestCheck:
    quadrature = cfg.replace(method=Method.QUADRATURE)
    monte_carlo = cfg.replace(method=Method.MONTE_CARLO)
    rows = []
    passed = True
    for alpha in NORMALIZATION_ALPHAS:
        disk = integrate(bergman(alpha), UnitDisk(), quadrature)
        half_plane = integrate(tau(alpha), RightHalfPlane(), quadrature)
        sampled = integrate(tau(alpha), RightHalfPlane(), monte_carlo, ("normalization",))
        ok = (
            abs(disk.value - 1) <= 1e-6
            and abs(half_plane.value - 1) <= 1e-6
            and abs(sampled.value - half_plane.value) <= max(4 * sampled.error_bar, 1e-3)
        )
        passed = passed and ok
        rows.append(
            {
                "alpha": alpha,
                "disk": disk.value,
                "half_plane": half_plane.value,
                "half_plane_sampled": sampled.value,
            }
        )
    return SelftestCheck("normalization", passed, {"cases": rows})


def check_window(cfg: IntegrationConfig) -> SelftestCheck:
    rows = []
    passed = True
    for alpha, h in WINDOW_CASES:
        estimate = pullback_window_measure(parse_symbol("identity"), alpha, 1.0, h, cfg)
        exact = window_measure_closed_form(alpha, h)
        ok = abs(estimate.value - exact) <= 4 * estimate.error_bar
        passed = passed and ok
        rows.append(
            {
                "alpha": alpha,
                "h": h,
                "estimate": estimate.value,
                "error": estimate.error_bar,
                "exact": exact,
            }
        )
    return SelftestCheck("window", passed, {"cases": rows})


def check_schwarz_pick(cfg: IntegrationConfig) -> SelftestCheck:
    audits = [
        schwarz_pick_audit(parse_map(entry.example, _domain(entry.example)), 1000, cfg.seed)
        for entry in CATALOG
    ]
    return SelftestCheck(
        "schwarz-pick",
        all(a.passed for a in audits),
        {"max_ratio": max(a.max_value for a in audits if a.max_value is not None)},
    )


def _domain(descriptor: str) -> Domain:
    for domain in (Domain.DISK, Domain.HALF_PLANE):
        try:
            parse_map(descriptor, domain)
            return domain
        except CarlesonLabError:
            continue
    raise ConfigError("{} has no domain".format(descriptor), descriptor=descriptor)


def check_harnack(cfg: IntegrationConfig) -> SelftestCheck:
    f = parse_map("expquartic", Domain.HALF_PLANE)
    audit = harnack_audit(f, 1.0, 0.25, 10000, cfg.seed)
    return SelftestCheck("harnack", audit.passed, audit.to_record())


def check_dyadic(cfg: IntegrationConfig, squares: int = 200, pairs: int = 100) -> SelftestCheck:
    rng = StreamFactory(cfg.seed).generator("selftest", "dyadic")
    worst = math.inf
    for _ in range(squares):
        n = int(rng.integers(1, 9))
        side = 1 << n
        index = DyadicIndex(n, int(rng.integers(1, side)), int(rng.integers(0, side)))
        z, w = sample_pairs_in_square(index, rng, pairs)
        rho = half_plane_distance_array(z, w)
        worst = min(worst, float(np.min(1 - rho**2)))
    return SelftestCheck("dyadic", worst >= 0.2, {"min_one_minus_rho2": worst})


def check_cz(cfg: IntegrationConfig) -> SelftestCheck:
    f = parse_map(CZ_MAP, Domain.HALF_PLANE)
    averager = DyadicAverager(f, cfg)
    result = cz_decompose(f, cfg, n_max=CZ_DEPTH, averager=averager)
    oracle = set(brute_force_stopping_squares(f, CZ_DEPTH, cfg, averager=averager))
    found = set(result.indices)
    trapped = all(1 - s.error <= s.average <= 4 + s.error for s in result.squares)
    mismatch = sorted(found ^ oracle)
    unexplained = [i for i in mismatch if i not in set(result.ambiguous)]
    return SelftestCheck(
        "cz",
        result.disjoint() and trapped and not unexplained,
        {
            "map": CZ_MAP,
            "squares": len(found),
            "oracle": len(oracle),
            "mismatch": [list(i.as_tuple()) for i in mismatch],
        },
    )


def check_remark(cfg: IntegrationConfig) -> SelftestCheck:
    identity = remark_polynomial_identity(cfg)
    report = remark_counterexample(np.linspace(0.05, 0.5, 10), cfg)
    slope_ok = report.slope_error <= 0.05
    identity_ok = abs(identity - constants.REMARK_SLOPE) <= 1e-10
    return SelftestCheck(
        "remark",
        slope_ok and identity_ok and report.witness is not None,
        {"identity": identity, "slope": report.slope, "witness": report.witness},
    )


def check_transfer(cfg: IntegrationConfig) -> SelftestCheck:
    check = transfer_identity_check(parse_map("expquartic", Domain.HALF_PLANE), 0.0, 2.0, cfg)
    return SelftestCheck("transfer", check.agree, check.to_record())


def check_growth(cfg: IntegrationConfig) -> SelftestCheck:
    audits = {d: growth_bound_audit(parse_map(d, Domain.DISK)) for d in GROWTH_MAPS}
    return SelftestCheck(
        "growth",
        all(a.passed for a in audits.values()),
        {d: a.ratio for d, a in audits.items()},
    )


def check_orlicz(cfg: IntegrationConfig) -> SelftestCheck:
    rows = {}
    passed = True
    for name, _, _, example in ORLICZ_CATALOG:
        function = parse_orlicz(example)
        ok = convexity_audit(function, seed=cfg.seed).passed and growth_audit(function).passed
        passed = passed and ok
        rows[name] = ok
    return SelftestCheck("orlicz", passed, rows)


def check_indicator(cfg: IntegrationConfig) -> SelftestCheck:
    h_grid = (0.4, 0.2, 0.1, 0.05, 0.02, 0.004)
    # the identity profile is the exact window mass, free of sampling noise
    identity = CarlesonProfile.from_rho(
        0.0, "identity", h_grid, [window_measure_closed_form(0.0, h) for h in h_grid]
    )
    profiles = (
        ("constant:0.5", carleson_profile(parse_symbol("constant:0.5"), 0.0, h_grid, 8, cfg)),
        ("identity", identity),
    )
    expected = {"constant:0.5": Verdict.COMPACT, "identity": Verdict.NOT_COMPACT}
    rows = {}
    passed = True
    for descriptor, profile in profiles:
        comparison = compare_variants(parse_orlicz("power:2"), 0.0, profile)
        ok = comparison.ordered and comparison.necessary.verdict is expected[descriptor]
        passed = passed and ok
        rows[descriptor] = comparison.necessary.verdict.value
    return SelftestCheck("indicator", passed, rows)


CHECKS: Tuple[Tuple[str, Callable[[IntegrationConfig], SelftestCheck]], ...] = (
    ("normalization", check_normalization),
    ("window", check_window),
    ("schwarz-pick", check_schwarz_pick),
    ("harnack", check_harnack),
    ("dyadic", check_dyadic),
    ("cz", check_cz),
    ("remark", check_remark),
    ("transfer", check_transfer),
    ("growth", check_growth),
    ("orlicz", check_orlicz),
    ("indicator", check_indicator),
)


def run_selftest(cfg: IntegrationConfig, only: Sequence[str] = ()) -> SelftestReport:
    names = [name for name, _ in CHECKS]
    for name in only:
        if name not in names:
            raise ConfigError(
                "unknown check {!r}{}".format(name, suggestions_msg(find_approx(name, names))),
                key="only",
            )
    checks = []
    for name, check in CHECKS:
        if only and name not in only:
            continue
        try:
            outcome = check(cfg)
        except CarlesonLabError as e:
            outcome = SelftestCheck(name, False, e.to_record())
        log = logger.info if outcome.passed else logger.warning
        log("selftest %s: %s", name, "passed" if outcome.passed else "FAILED")
        checks.append(outcome)
    return SelftestReport(checks)
