#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

"""
Pull-back measures A_α∘φ^{-1} of Carleson windows and level sets.

Windows are estimated from a stratified sample of A_α. Schwarz-Pick gives
1 - |φ(z)| >= ((1-a)/(1+a))(1 - |z|) with a = |φ(0)|, so only points at depth
1 - |z| <= h(1+a)/(1-a) can land in a window of size h. The sampler covers
that band with dyadic depth shells of equal sample allocation and exact
masses; one sample set serves every window of an experiment.
"""

import enum
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from carleson_lab.internal import constants, sampling
from carleson_lab.internal.exceptions import (
    DegenerateRHS,
    DomainMismatch,
    InvalidGrid,
    InvalidRegion,
    NonConvergence,
    PreconditionFailed,
)
from carleson_lab.internal.geometry import (
    Domain,
    DyadicIndex,
    DyadicSquare,
    LevelSet,
    OmegaBox,
    Region,
    RightHalfPlane,
    UnitDisk,
    as_complex,
)
from carleson_lab.internal.helpers import loglog_slope, parallel_map
from carleson_lab.internal.measures import (
    Estimate,
    IntegrationConfig,
    Measure,
    area,
    bergman,
    integrate,
    tau,
    weighted_samples,
)
from carleson_lab.internal.selfmaps import CayleyMap, Composition, HoloMap

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Shell:
    depth_lo: float
    depth_hi: float
    mass: float
    count: int
    images: np.ndarray  # φ(z) for the samples that can reach a window


class PullbackSampler:
    """
    Stratified A_α sample pushed forward by a D→D symbol, restricted to the
    images lying within depth `h_max` of the circle.
    """

    def __init__(
        self,
        symbol: HoloMap,
        alpha: float,
        h_max: float,
        h_min: float,
        cfg: IntegrationConfig,
        stream: Tuple = ("pullback",),
    ):
        if symbol.domain is not Domain.DISK or symbol.codomain is not Domain.DISK:
            raise DomainMismatch(
                "pull-back windows need a symbol from D to D", symbol=symbol.descriptor
            )
        if not 0 < h_min <= h_max < 1:
            raise InvalidGrid("window sizes must satisfy 0 < h_min <= h_max < 1")
        self.symbol = symbol
        self.alpha = sampling.check_alpha(alpha)
        self.h_max = h_max
        a = abs(complex(symbol.evaluate_array(np.array([0j]))[0]))
        self.depth_cut = min(1.0, h_max * (1 + a) / (1 - a))
        depth_floor = min(h_min / constants.SHELL_DEPTH_FACTOR, self.depth_cut / 2)
        bands = sampling.geometric_shells(self.depth_cut, depth_floor)
        per_shell = max(1, -(-cfg.sample_count // len(bands)))
        streams = cfg.streams

        def draw(args):
            index, (lo, hi) = args
            u_lo = float(sampling.bergman_depth_to_u(self.alpha, lo))
            u_hi = float(sampling.bergman_depth_to_u(self.alpha, hi))
            kept = []
            for chunk, size in sampling.chunks(per_shell, cfg.chunk_size):
                rng = streams.generator(*stream, index, chunk)
                z = sampling.sample_bergman_shell(self.alpha, u_lo, u_hi, size, rng)
                w = symbol.evaluate_array(z)
                kept.append(w[(np.abs(w) >= 1 - h_max) & (np.abs(w) < 1)])
            logger.debug(
                "shell %d depth [%.3g, %.3g]: %d of %d images kept",
                index,
                lo,
                hi,
                sum(k.size for k in kept),
                per_shell,
            )
            return Shell(lo, hi, u_hi - u_lo, per_shell, np.concatenate(kept))

        self.shells: List[Shell] = parallel_map(draw, list(enumerate(bands)), cfg.workers)
        self._angles = []
        for shell in self.shells:
            order = np.argsort(np.angle(shell.images), kind="stable")
            images = shell.images[order]
            self._angles.append((np.angle(images), np.abs(images)))

    @property
    def samples_used(self) -> int:
        return sum(s.count for s in self.shells)

    def window_counts(self, h: float, thetas: np.ndarray) -> np.ndarray:
        """hits[k, j]: samples of shell k landing in W(e^{iθ_j}, h)."""
        thetas = np.asarray(thetas, dtype=float)
        counts = np.zeros((len(self.shells), thetas.size), dtype=np.int64)
        for k, (angles, moduli) in enumerate(self._angles):
            selected = angles[moduli >= 1 - h]
            if selected.size == 0:
                continue
            # wrap the circle once on each side
            extended = np.concatenate(
                [selected - 2 * math.pi, selected, selected + 2 * math.pi]
            )
            centers = np.angle(np.exp(1j * thetas))
            lo = np.searchsorted(extended, centers - h, side="left")
            hi = np.searchsorted(extended, centers + h, side="right")
            counts[k] = hi - lo
        return counts

    def window_estimates(self, h: float, thetas) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(value, error, hits) for W(e^{iθ}, h) at every θ."""
        if not 0 < h <= self.h_max:
            raise InvalidRegion("window larger than the sampled band", h=h)
        counts = self.window_counts(h, thetas)
        masses = np.array([s.mass for s in self.shells])[:, None]
        sizes = np.array([s.count for s in self.shells], dtype=float)[:, None]
        p = counts / sizes
        value = (masses * p).sum(axis=0)
        variance = (masses**2 * p * (1 - p) / sizes).sum(axis=0)
        return value, np.sqrt(variance), counts.sum(axis=0)

    def window(self, xi, h: float) -> Estimate:
        theta = math.atan2(as_complex(xi).imag, as_complex(xi).real)
        value, error, _ = self.window_estimates(h, np.array([theta]))
        return Estimate(float(value[0]), float(error[0]), self.samples_used)


def _xi(xi) -> complex:
    xi = as_complex(xi)
    if abs(abs(xi) - 1) > constants.CIRCLE_TOLERANCE:
        raise InvalidRegion("ξ must lie on the unit circle", modulus=abs(xi))
    return xi


def pullback_window_measure(
    symbol: HoloMap, alpha: float, xi, h: float, cfg: IntegrationConfig
) -> Estimate:
    """A_α({z : φ(z) ∈ W(ξ, h)}) by stratified Monte Carlo."""
    xi = _xi(xi)
    if not 0 < h < 1:
        raise InvalidRegion("h must lie in (0, 1)", h=h)
    sampler = PullbackSampler(symbol, alpha, h, h, cfg, ("window", repr(h)))
    estimate = sampler.window(xi, h)
    if estimate.value > 0 and estimate.relative_error > cfg.mc_rel_tol:
        raise NonConvergence(
            "window estimate too noisy for the sample budget",
            value=estimate.value,
            error=estimate.error_bar,
            samples=estimate.samples_used,
        )
    return estimate


def validate_h_grid(h_grid: Sequence[float], upper: float) -> Tuple[float, ...]:
    h_grid = tuple(float(h) for h in h_grid)
    if not h_grid:
        raise InvalidGrid("empty h grid")
    if any(not 0 < h < upper for h in h_grid):
        raise InvalidGrid("h values must lie in (0, {})".format(upper), h=list(h_grid))
    if any(b >= a for a, b in zip(h_grid, h_grid[1:])):
        raise InvalidGrid("h grid must be strictly decreasing", h=list(h_grid))
    return h_grid


def running_k(alpha: float, h_grid: Sequence[float], rho: Sequence[float]) -> List[float]:
    """K(h) = max over grid points t <= h of ρ(t)/t^{α+2}; the grid decreases."""
    k, best = [0.0] * len(h_grid), 0.0
    for i in range(len(h_grid) - 1, -1, -1):
        best = max(best, rho[i] / h_grid[i] ** (alpha + 2))
        k[i] = best
    return k


@dataclass
class CarlesonProfile:
    alpha: float
    symbol: str
    h: Tuple[float, ...]
    rho: Tuple[float, ...]
    rho_error: Tuple[float, ...]
    k: Tuple[float, ...]
    xi_count: int
    hits: Tuple[int, ...] = ()

    @classmethod
    def from_rho(
        cls,
        alpha: float,
        symbol: str,
        h: Sequence[float],
        rho: Sequence[float],
        rho_error: Optional[Sequence[float]] = None,
        xi_count: int = 0,
        hits: Sequence[int] = (),
    ) -> "CarlesonProfile":
        h = validate_h_grid(h, 1.0)
        rho = tuple(float(r) for r in rho)
        if len(rho) != len(h):
            raise InvalidGrid("ρ and h grids differ in length")
        errors = tuple(rho_error) if rho_error is not None else (0.0,) * len(h)
        return cls(
            alpha, symbol, h, rho, errors, tuple(running_k(alpha, h, rho)), xi_count, tuple(hits)
        )

    @property
    def eventually_zero(self) -> bool:
        return self.rho[-1] == 0

    @property
    def reliable(self) -> List[bool]:
        if not self.hits:
            return [True] * len(self.h)
        return [n >= constants.MIN_RELIABLE_HITS for n in self.hits]

    @property
    def normalized(self) -> List[float]:
        return [r / h ** (self.alpha + 2) for r, h in zip(self.rho, self.h)]

    @property
    def k_rho(self) -> List[Optional[float]]:
        """K(h) h^{α+2}/ρ(h), bounded for pull-back measures."""
        return [
            k * h ** (self.alpha + 2) / r if r > 0 else None
            for k, h, r in zip(self.k, self.h, self.rho)
        ]

    def rows(self) -> List[Dict[str, Any]]:
        reliable = self.reliable
        k_rho = self.k_rho
        return [
            {
                "h": self.h[i],
                "rho": self.rho[i],
                "rho_error": self.rho_error[i],
                "normalized": self.normalized[i],
                "K": self.k[i],
                "k_rho": k_rho[i],
                "hits": self.hits[i] if self.hits else None,
                "reliable": reliable[i],
            }
            for i in range(len(self.h))
        ]

    def to_record(self) -> Dict[str, Any]:
        return {
            "alpha": self.alpha,
            "symbol": self.symbol,
            "xi_count": self.xi_count,
            "eventually_zero": self.eventually_zero,
            "rows": self.rows(),
        }


def xi_grid_size(xi_count: int, h_min: float) -> int:
    return max(xi_count, 64, math.ceil(4 * math.pi / h_min))


def carleson_profile(
    symbol: HoloMap,
    alpha: float,
    h_grid: Sequence[float],
    xi_count: int,
    cfg: IntegrationConfig,
) -> CarlesonProfile:
    """ρ(h) = sup over a ξ grid of the pull-back window mass, K its running sup."""
    h_grid = validate_h_grid(h_grid, 0.5)
    if xi_count < 8:
        raise InvalidGrid("at least 8 directions ξ are needed", xi_count=xi_count)
    count = xi_grid_size(xi_count, h_grid[-1])
    thetas = -math.pi + 2 * math.pi * (np.arange(count) + 0.5) / count
    sampler = PullbackSampler(symbol, alpha, h_grid[0], h_grid[-1], cfg, ("profile",))
    rho, errors, hits = [], [], []
    for h in h_grid:
        value, error, counts = sampler.window_estimates(h, thetas)
        best = int(np.argmax(value))
        rho.append(float(value[best]))
        errors.append(float(error[best]))
        hits.append(int(counts[best]))
        logger.debug("ρ(%.4g) = %.6g +- %.2g (%d hits)", h, rho[-1], errors[-1], hits[-1])
    profile = CarlesonProfile.from_rho(
        alpha, symbol.descriptor, h_grid, rho, errors, count, hits
    )
    logger.info(
        "profile of %s: %d windows sizes, %d directions ξ, eventually zero: %s",
        symbol.descriptor,
        len(h_grid),
        count,
        profile.eventually_zero,
    )
    return profile


@dataclass
class ScalingReport:
    alpha: float
    symbol: str
    xi: complex
    h: Tuple[float, ...]
    eps: Tuple[float, ...]
    measures: List[List[float]]
    errors: List[List[float]]
    hits: List[List[int]]
    ratios: List[List[Optional[float]]]
    slopes: List[Optional[float]]
    reported: List[bool]
    alarm: float

    @property
    def c_emp(self) -> Optional[float]:
        values = [r for row in self.ratios for r in row if r is not None]
        return max(values) if values else None

    @property
    def c_by_h(self) -> List[Optional[float]]:
        return [
            max((r for r in row if r is not None), default=None) for row in self.ratios
        ]

    @property
    def degenerate(self) -> bool:
        return not any(self.reported)

    @property
    def alarmed(self) -> bool:
        return self.c_emp is not None and self.c_emp > self.alarm

    def rows(self) -> List[Dict[str, Any]]:
        return [
            {
                "h": h,
                "eps": eps,
                "measure": self.measures[i][j],
                "error": self.errors[i][j],
                "hits": self.hits[i][j],
                "ratio": self.ratios[i][j],
            }
            for i, h in enumerate(self.h)
            for j, eps in enumerate(self.eps)
        ]

    def to_record(self) -> Dict[str, Any]:
        return {
            "alpha": self.alpha,
            "symbol": self.symbol,
            "xi": [self.xi.real, self.xi.imag],
            "slopes": self.slopes,
            "c_emp": self.c_emp,
            "c_by_h": self.c_by_h,
            "degenerate": self.degenerate,
            "alarm": self.alarm,
            "alarmed": self.alarmed,
            "rows": self.rows(),
        }


def eps_grid(eps_min: float, eps_max: float, count: int) -> Tuple[float, ...]:
    """Log-spaced ε values in decreasing order, always starting at 1."""
    if not 0.05 <= eps_min <= eps_max <= 1 or count < 1:
        raise InvalidGrid(
            "ε grid must lie in [0.05, 1]", eps_min=eps_min, eps_max=eps_max
        )
    if count == 1 or eps_min == eps_max:
        values = [eps_max]
    else:
        values = list(np.exp(np.linspace(math.log(eps_max), math.log(eps_min), count)))
    values = [1.0] + [float(v) for v in values if v < 1.0]
    return tuple(values)


def scaling_experiment(
    symbol: HoloMap,
    alpha: float,
    xi,
    h_grid: Sequence[float],
    eps: Sequence[float],
    cfg: IntegrationConfig,
    alarm: float = 50.0,
) -> ScalingReport:
    """
    R(h, ε) = μ(W(ξ, εh))/(ε^{α+2} μ(W(ξ, h))) from one shared sample set,
    so that μ(W(ξ, εh)) <= μ(W(ξ, h)) holds sample by sample and R(h, 1) = 1.
    """
    xi = _xi(xi)
    h_grid = validate_h_grid(h_grid, 0.25 + 1e-12)
    eps = tuple(float(e) for e in eps)
    if not eps or any(not 0.05 <= e <= 1 for e in eps):
        raise InvalidGrid("ε values must lie in [0.05, 1]", eps=list(eps))
    if 1.0 not in eps:
        eps = (1.0,) + eps
    theta = np.array([math.atan2(xi.imag, xi.real)])
    sampler = PullbackSampler(
        symbol, alpha, h_grid[0], h_grid[-1] * min(eps), cfg, ("scaling",)
    )
    measures, errors, hits, ratios, slopes, reported = [], [], [], [], [], []
    for h in h_grid:
        row_m, row_e, row_n = [], [], []
        for e in eps:
            value, error, count = sampler.window_estimates(e * h, theta)
            row_m.append(float(value[0]))
            row_e.append(float(error[0]))
            row_n.append(int(count[0]))
        base = row_m[eps.index(1.0)] if 1.0 in eps else None
        base_error = row_e[eps.index(1.0)] if 1.0 in eps else None
        ok = base is not None and base > constants.RATIO_SIGMA_GATE * base_error
        reported.append(ok)
        ratios.append(
            [m / (e ** (alpha + 2) * base) if ok else None for m, e in zip(row_m, eps)]
        )
        slopes.append(_slope(eps, row_m, row_n) if ok else None)
        measures.append(row_m)
        errors.append(row_e)
        hits.append(row_n)
    report = ScalingReport(
        alpha,
        symbol.descriptor,
        xi,
        h_grid,
        eps,
        measures,
        errors,
        hits,
        ratios,
        slopes,
        reported,
        alarm,
    )
    if report.degenerate:
        logger.warning(
            "%s: every window at ξ=%s is indistinguishable from 0, "
            "the profile is eventually zero",
            symbol.descriptor,
            xi,
        )
    elif report.alarmed:
        logger.warning(
            "%s: C_emp = %.4g exceeds the alarm %.4g",
            symbol.descriptor,
            report.c_emp,
            alarm,
        )
    return report


def _slope(eps, values, hits) -> Optional[float]:
    usable = [(e, v) for e, v, n in zip(eps, values, hits) if n >= constants.MIN_TREND_HITS]
    if len(usable) < 2:
        return None
    return loglog_slope([u[0] for u in usable], [u[1] for u in usable])


# level sets


def _check_level(holo: HoloMap, measure: Measure, lam: float, region: Region):
    if not lam > 0:
        raise InvalidRegion("λ must be positive", lam=lam)
    if holo.codomain is not Domain.HALF_PLANE:
        raise DomainMismatch("level sets need a map into Π⁺", map=holo.descriptor)
    if region.ambient is not holo.domain or measure.support is not holo.domain:
        raise DomainMismatch(
            "map, measure and region must share a domain",
            map=holo.domain.value,
            measure=measure.support.value,
            region=region.ambient.value,
        )


def level_set_measure(
    holo: HoloMap,
    measure: Measure,
    lam: float,
    region: Region,
    cfg: IntegrationConfig,
    stream: Tuple = ("level-set",),
) -> Estimate:
    """measure({z ∈ region : |holo(z)| > λ})"""
    _check_level(holo, measure, lam, region)
    return integrate(measure, LevelSet(holo, lam, region), cfg, stream)


class LevelSampler:
    """
    One weighted sample of `measure` over `region` with |holo| evaluated once;
    level sets for every λ are read off the same sample.
    """

    def __init__(
        self,
        holo: HoloMap,
        measure: Measure,
        region: Region,
        cfg: IntegrationConfig,
        stream: Tuple = ("levels",),
    ):
        _check_level(holo, measure, 1.0, region)
        self.samples = weighted_samples(measure, region, cfg, stream)
        self.moduli = np.abs(holo.evaluate_array(self.samples.points))

    def measure(self, lam: float) -> Estimate:
        return self.samples.estimate(self.moduli > lam)

    def hits(self, lam: float) -> int:
        return int(np.count_nonzero(self.moduli > lam))


class TailKind(enum.Enum):
    STARTING = "starting"
    GLOBAL = "global"
    REDUCTION = "reduction"
    THEOCLEF = "theoclef"
    LOCALIZE = "localize"
    KAPPA = "kappa"


@dataclass
class TailAuditReport:
    kind: str
    alpha: float
    map: str
    exponent: float
    lambdas: Tuple[float, ...]
    lhs: List[float]
    lhs_error: List[float]
    hits: List[int]
    rhs: float
    rhs_error: float
    trend_limit: float
    extra: Dict[str, Any] = field(default_factory=dict)
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def ratios(self) -> List[float]:
        if self.rhs == 0:
            # an empty right-hand side only bounds an empty left-hand side
            return [0.0 if v == 0 else math.inf for v in self.lhs]
        return [v * lam**self.exponent / self.rhs for v, lam in zip(self.lhs, self.lambdas)]

    @property
    def constant(self) -> float:
        return max(self.ratios, default=0.0)

    def trend(self) -> Tuple[Optional[float], Optional[float]]:
        """
        Weighted log-log slope of the ratio over the upper half of the λ grid
        (λ >= sqrt(λ_min λ_max)), with its standard error. Only points with
        enough hits take part.
        """
        if not self.lambdas:
            return None, None
        pivot = math.sqrt(self.lambdas[0] * self.lambdas[-1])
        points = [
            (math.log(lam), math.log(r), e / v)
            for lam, r, v, e, n in zip(
                self.lambdas, self.ratios, self.lhs, self.lhs_error, self.hits
            )
            if lam >= pivot * (1 - 1e-12) and n >= constants.MIN_TREND_HITS and r > 0
        ]
        if len(points) < 2:
            return None, None
        x = np.array([p[0] for p in points])
        y = np.array([p[1] for p in points])
        sigma = np.array([max(p[2], 1e-12) for p in points])
        w = 1 / sigma**2
        xm = (w * x).sum() / w.sum()
        sxx = (w * (x - xm) ** 2).sum()
        if sxx == 0:
            return None, None
        slope = float((w * (x - xm) * y).sum() / sxx)
        return slope, float(math.sqrt(1 / sxx))

    @property
    def violation(self) -> bool:
        slope, error = self.trend()
        if slope is not None and slope - 2 * error > self.trend_limit:
            return True
        return not all(self.checks.values())

    def rows(self) -> List[Dict[str, Any]]:
        ratios = self.ratios
        return [
            {
                "lambda": lam,
                "lhs": self.lhs[i],
                "lhs_error": self.lhs_error[i],
                "hits": self.hits[i],
                "ratio": ratios[i],
            }
            for i, lam in enumerate(self.lambdas)
        ]

    def to_record(self) -> Dict[str, Any]:
        slope, error = self.trend()
        return {
            "kind": self.kind,
            "alpha": self.alpha,
            "map": self.map,
            "exponent": self.exponent,
            "rhs": self.rhs,
            "rhs_error": self.rhs_error,
            "constant": self.constant,
            "trend_slope": slope,
            "trend_error": error,
            "trend_limit": self.trend_limit,
            "violation": self.violation,
            "checks": self.checks,
            **self.extra,
            "rows": self.rows(),
        }


def validate_lambda_grid(lambdas: Sequence[float]) -> Tuple[float, ...]:
    lambdas = tuple(float(v) for v in lambdas)
    if not lambdas or any(v <= 1 for v in lambdas):
        raise InvalidGrid("λ values must exceed 1", lambdas=list(lambdas))
    if any(b <= a for a, b in zip(lambdas, lambdas[1:])):
        raise InvalidGrid("λ grid must be increasing", lambdas=list(lambdas))
    return lambdas


def _value_at(holo: HoloMap, z: complex) -> float:
    return abs(complex(holo.evaluate_array(np.array([z]))[0]))


def _require(holo: HoloMap, domain: Domain, kind: TailKind):
    if holo.domain is not domain or holo.codomain is not Domain.HALF_PLANE:
        raise DomainMismatch(
            "the {} audit needs a map from the {} to Π⁺".format(kind.value, domain.value),
            map=holo.descriptor,
        )


def tail_inequality_audit(
    kind,
    holo: HoloMap,
    alpha: float,
    lambdas: Sequence[float],
    cfg: IntegrationConfig,
    trend_limit: float = 0.05,
    c1_factor: float = 0.9,
    square: DyadicIndex = DyadicIndex(0, 0, 0),
) -> TailAuditReport:
    """
    Normalised tail ratios LHS(λ) λ^{α+2}/RHS for the level-set inequalities:

        starting   A_α(|g| > λ)          against |g(0)|^{α+2}
        global     τ_α(|f| > λ)          against |f(1)|^{α+2}
        reduction  A_α(|g| > λ)          against A_α(|g| > 1), |g(0)| <= tanh π
        theoclef   τ_α(|f| > λ ∩ Ω)      against τ_α(|f| > 1 ∩ Ω), |f(1)| <= c1
        localize   τ_α(|f| > λ ∩ Q)      against τ_α(Q) |f(c_Q)|^{α+2}
        kappa      μ_0(|f| > λ ∩ Ω)      against |f(1)|^2 (exponent 2)
    """
    kind = TailKind(kind)
    lambdas = validate_lambda_grid(lambdas)
    exponent = alpha + 2
    extra: Dict[str, Any] = {}
    stream = ("tail", kind.value)

    if kind in (TailKind.STARTING, TailKind.REDUCTION):
        _require(holo, Domain.DISK, kind)
        measure, region = bergman(alpha), UnitDisk()
        at_zero = _value_at(holo, 0j)
        extra["g0"] = at_zero
        if kind is TailKind.REDUCTION and at_zero > math.tanh(math.pi):
            raise PreconditionFailed(
                "|g(0)| must not exceed tanh π", g0=at_zero, bound=math.tanh(math.pi)
            )
    else:
        _require(holo, Domain.HALF_PLANE, kind)
        if kind is TailKind.GLOBAL:
            measure, region = tau(alpha), RightHalfPlane()
        elif kind is TailKind.LOCALIZE:
            measure, region = tau(alpha), DyadicSquare(square)
        elif kind is TailKind.KAPPA:
            measure, region = area(), OmegaBox()
            exponent = 2.0
        else:
            measure, region = tau(alpha), OmegaBox()
        extra["f1"] = _value_at(holo, 1 + 0j)
        if kind is TailKind.THEOCLEF:
            c1 = c1_factor * math.tanh(math.pi)
            extra["c1"] = c1
            if extra["f1"] > c1:
                raise PreconditionFailed("|f(1)| must not exceed c1", f1=extra["f1"], c1=c1)

    sampler = LevelSampler(holo, measure, region, cfg, stream)
    estimates = [sampler.measure(lam) for lam in lambdas]

    if kind in (TailKind.REDUCTION, TailKind.THEOCLEF):
        rhs = sampler.measure(1.0)
        rhs_value, rhs_error = rhs.value, rhs.error_bar
    elif kind is TailKind.LOCALIZE:
        region_mass = integrate(measure, region, cfg, stream + ("square",))
        center = square.center
        extra["square"] = list(square.as_tuple())
        extra["center_value"] = _value_at(holo, center)
        rhs_value = region_mass.value * extra["center_value"] ** exponent
        rhs_error = region_mass.error_bar * extra["center_value"] ** exponent
    else:
        base = extra["g0"] if "g0" in extra else extra["f1"]
        rhs_value, rhs_error = base**exponent, 0.0

    if not rhs_value > 0:
        raise DegenerateRHS(
            "the right-hand side of the {} inequality vanishes".format(kind.value),
            map=holo.descriptor,
        )

    report = TailAuditReport(
        kind.value,
        alpha,
        holo.descriptor,
        exponent,
        lambdas,
        [e.value for e in estimates],
        [e.error_bar for e in estimates],
        [sampler.hits(lam) for lam in lambdas],
        rhs_value,
        rhs_error,
        trend_limit,
        extra,
    )
    if report.violation:
        logger.warning(
            "%s audit of %s: ratio grows with slope %.3g > %.3g",
            kind.value,
            holo.descriptor,
            report.trend()[0],
            trend_limit,
        )
    return report


@dataclass(frozen=True)
class AgreementCheck:
    """Two independent estimates of one quantity; they agree within 4σ."""

    left: Estimate
    right: Estimate
    labels: Tuple[str, str] = ("left", "right")

    @property
    def agree(self) -> bool:
        spread = math.hypot(self.left.error_bar, self.right.error_bar)
        return abs(self.left.value - self.right.value) <= 4 * spread

    def to_record(self):
        return {
            self.labels[0]: self.left.to_record(),
            self.labels[1]: self.right.to_record(),
            "agree": self.agree,
        }


def transfer_identity_check(
    f: HoloMap, alpha: float, lam: float, cfg: IntegrationConfig
) -> AgreementCheck:
    """
    A_α(|f∘T| > λ) against τ_α(|f| > λ), from independent streams.
    """
    _require(f, Domain.HALF_PLANE, TailKind.GLOBAL)
    g = Composition((f, CayleyMap(Domain.DISK)))
    disk = level_set_measure(g, bergman(alpha), lam, UnitDisk(), cfg, ("transfer", "disk"))
    half_plane = level_set_measure(
        f, tau(alpha), lam, RightHalfPlane(), cfg, ("transfer", "half-plane")
    )
    return AgreementCheck(disk, half_plane, ("disk", "half_plane"))
