#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

"""
The experiment commands.

Every argument is a configuration key and defaults to None: a flag left out
falls back to the config document, then to the command defaults. The
resolved configuration is on the context, its values are passed in.
"""

import logging
import typing

from carleson_lab import argument, command, context
from carleson_lab.internal.config import VARIANTS
from carleson_lab.internal.czdecomp import (
    cz_decompose,
    precision_regions,
    remark_counterexample,
    theo_clef_chain_audit,
)
from carleson_lab.internal.io.report import publish
from carleson_lab.internal.orlicz import compactness_indicator, compare_variants
from carleson_lab.internal.pullback import (
    TailKind,
    carleson_profile,
    scaling_experiment,
    tail_inequality_audit,
)
from carleson_lab.internal.selftest import CHECKS, run_selftest

logger = logging.getLogger(__name__)

TAIL_KINDS = [k.value for k in TailKind]
CHECK_NAMES = [name for name, _ in CHECKS]


def _config():
    return context.get_context().config


@command
@argument("alpha", description="Weight parameter, > -1")
@argument("symbol", description="Symbol descriptor, e.g. monomial:2")
@argument("xi_angle", description="Window direction ξ = exp(i·angle)")
@argument("h_min", description="Smallest window size")
@argument("h_max", description="Largest window size, below 1/4")
@argument("h_count", description="Number of window sizes")
@argument("eps_min", description="Smallest dilation ε, at least 0.05")
@argument("eps_count", description="Number of dilations (1 is always added)")
@argument("alarm", description="Alarm level of the empirical constant")
def scaling(
    alpha: float = None,
    symbol: str = None,
    xi_angle: float = None,
    h_min: float = None,
    h_max: float = None,
    h_count: int = None,
    eps_min: float = None,
    eps_count: int = None,
    alarm: float = None,
):
    """
    Scaling of window pull-backs.

    Estimates R(h, ε) = μ(W(ξ, εh)) / (ε^(α+2) μ(W(ξ, h))) from one sample
    set and the log-log slope of ε ↦ μ(W(ξ, εh)). Exits 2 when the
    empirical constant exceeds the alarm level.
    """
    cfg = _config()
    report = scaling_experiment(
        cfg.holo_symbol, alpha, cfg.xi, cfg.h_grid, cfg.eps, cfg.integration, alarm
    )
    return publish(cfg, report, report.alarmed)


@command
@argument("alpha", description="Weight parameter, > -1")
@argument("symbol", description="Symbol descriptor, e.g. blaschke:0.5")
@argument("h_min", description="Smallest window size")
@argument("h_max", description="Largest window size, below 1/2")
@argument("h_count", description="Number of window sizes")
@argument("xi_count", description="Number of boundary directions ξ")
def profile(
    alpha: float = None,
    symbol: str = None,
    h_min: float = None,
    h_max: float = None,
    h_count: int = None,
    xi_count: int = None,
):
    """
    Carleson function of the pull-back measure.

    ρ(h) is the largest window mass over the directions ξ, K(h) its running sup
    of ρ(t)/t^(α+2).
    """
    cfg = _config()
    report = carleson_profile(cfg.holo_symbol, alpha, cfg.h_grid, cfg.xi_count, cfg.integration)
    return publish(cfg, report)


@command
@argument("kind", description="Level-set inequality to audit", choices=TAIL_KINDS)
@argument("alpha", description="Weight parameter, > -1")
@argument("map", description="Audited map: D→Π⁺ for starting/reduction, Π⁺→Π⁺ otherwise")
@argument("lambda_min", description="Smallest level λ, > 1")
@argument("lambda_max", description="Largest level λ")
@argument("lambda_count", description="Number of levels")
@argument("trend_limit", description="Largest tolerated log-log trend of the ratio")
@argument("c1_factor", description="Admissible |f(1)| for the theoclef kind")
def tail(
    kind: str = None,
    alpha: float = None,
    map: str = None,
    lambda_min: float = None,
    lambda_max: float = None,
    lambda_count: int = None,
    trend_limit: float = None,
    c1_factor: float = None,
):
    """
    Level-set tail inequalities.

    The ratio LHS(λ)·λ^(α+2)/RHS must stay bounded on the λ grid. Exits 2
    when its trend exceeds the limit or a precondition check fails.
    """
    cfg = _config()
    report = tail_inequality_audit(
        kind,
        cfg.holo_map,
        alpha,
        cfg.lambdas,
        cfg.integration,
        trend_limit=trend_limit,
        c1_factor=c1_factor,
    )
    return publish(cfg, report, report.violation)


@command
@argument("alpha", description="Weight parameter, > -1")
@argument("map", description="Map Π⁺→Π⁺ with mean of |f| over Ω at most 1")
@argument("n_max", description="Deepest dyadic generation")
@argument("cz_tol", description="Quadrature tolerance of the square averages")
@argument("prune", description="Skip subtrees where |f| stays below 1")
@argument("lambda_min", description="Smallest level λ of the chain, > 1")
@argument("lambda_max", description="Largest level λ of the chain")
@argument("lambda_count", description="Number of levels")
def czd(
    alpha: float = None,
    map: str = None,
    n_max: int = None,
    cz_tol: float = None,
    prune: bool = None,
    lambda_min: float = None,
    lambda_max: float = None,
    lambda_count: int = None,
):
    """
    Calderón-Zygmund decomposition of |f| on Ω.

    Emits the stopping squares with their averages, the precision regions
    and the final chain audit. Exits 2 when the precision regions or the
    chain fail their checks.
    """
    cfg = _config()
    result = cz_decompose(cfg.holo_map, cfg.integration, n_max=n_max, tol=cz_tol, prune=prune)
    precision = precision_regions(result, alpha, cfg.integration)
    chain = theo_clef_chain_audit(
        cfg.holo_map,
        alpha,
        cfg.lambdas,
        cfg.integration,
        result=result,
        trend_limit=cfg.trend_limit,
        n_max=n_max,
        tol=cz_tol,
    )
    record = {
        "decomposition": result,
        "precision": precision,
        "chain": chain,
        "rows": result.rows(),
    }
    return publish(cfg, record, not precision.passed or chain.violation)


@command
@argument("t_min", description="Smallest square half-side t")
@argument("t_max", description="Largest square half-side t, at most 1/2")
@argument("t_count", description="Number of t values")
def remark(t_min: float = None, t_max: float = None, t_count: int = None):
    """
    The mean of |exp(T^4)| over 1 + t[-1, 1]^2 drops below 1.

    Fits the slope at 0 (expected -1/60) and finds the smallest t with a
    mean below 1. Exits 2 when no such t is found on the grid.
    """
    cfg = _config()
    report = remark_counterexample(cfg.t_grid, cfg.integration)
    return publish(cfg, report, report.witness is None)


@command
@argument("alpha", description="Weight parameter, > -1")
@argument("symbol", description="Symbol descriptor, e.g. identity")
@argument("orlicz", description="Orlicz function, e.g. power:2")
@argument("variant", description="Compactness condition to evaluate", choices=list(VARIANTS))
@argument("h_min", description="Smallest window size")
@argument("h_max", description="Largest window size, two decades above h_min")
@argument("h_count", description="Number of window sizes")
@argument("xi_count", description="Number of boundary directions ξ")
@argument("drop_factor", description="Required drop of the indicator for compactness")
@argument("compact_level", description="Indicator level below which compactness is indicated")
@argument("noncompact_level", description="Indicator floor of the non compact verdict")
def compact(
    alpha: float = None,
    symbol: str = None,
    orlicz: str = None,
    variant: str = None,
    h_min: float = None,
    h_max: float = None,
    h_count: int = None,
    xi_count: int = None,
    drop_factor: float = None,
    compact_level: float = None,
    noncompact_level: float = None,
):
    """
    Compactness verdict of the composition operator on the Bergman-Orlicz
    space.

    Evaluates the indicator Ψ^-1(1/h^(α+2)) / Ψ^-1(1/ρ(h)) (necessary) or
    its form with h^(α+2) K(h) in place of ρ(h) (sufficient) along the
    profile. With both variants the pointwise ordering necessary <= sufficient
    is checked and a broken ordering exits 2.
    """
    cfg = _config()
    carleson = carleson_profile(cfg.holo_symbol, alpha, cfg.h_grid, cfg.xi_count, cfg.integration)
    function = cfg.orlicz_function
    if variant == "both":
        comparison = compare_variants(function, alpha, carleson, cfg.thresholds)
        record = {
            "profile": carleson,
            "comparison": comparison,
            "verdict": comparison.necessary.verdict,
            "rows": comparison.necessary.rows() + comparison.sufficient.rows(),
        }
        if not comparison.consistent:
            logger.info(
                "necessary and sufficient verdicts differ: %s, %s",
                comparison.necessary.verdict.value,
                comparison.sufficient.verdict.value,
            )
        return publish(cfg, record, not comparison.ordered)
    verdict = compactness_indicator(function, alpha, carleson, variant, cfg.thresholds)
    record = {"profile": carleson, "verdict": verdict, "rows": verdict.rows()}
    return publish(cfg, record)


@command
@argument("only", description="Run only these checks", choices=CHECK_NAMES)
def selftest(only: typing.List[str] = None):
    """
    Runs the invariant suite: normalization, window oracle, Schwarz-Pick,
    Harnack, dyadic geometry, CZ oracle, remark, transfer, growth, Orlicz
    audits and indicator. Exits 2 when a check fails.
    """
    cfg = _config()
    report = run_selftest(cfg.integration, only)
    return publish(cfg, report, not report.passed)
