#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

"""
Dyadic analysis of |f| on Ω = (0, 2) x (-1, 1): conditional expectations
E_n|f|, the dyadic maximal function, the stopping-time (Calderón-Zygmund)
decomposition of {Mf > 1} ∩ Ω and the audits built on it.

Averages carry a quadrature error and every comparison with 1 uses a dead
band: a square exceeds 1 when avg - err > 1 and stays below when
avg + err <= 1. Squares in between are refined and reported as ambiguous.
"""

import logging
import math
import threading
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from carleson_lab.internal import constants, sampling
from carleson_lab.internal.exceptions import (
    DomainMismatch,
    InvalidGrid,
    InvalidRegion,
    RootAverageExceedsOne,
)
from carleson_lab.internal.geometry import (
    OMEGA,
    Box,
    Domain,
    DyadicIndex,
    LevelSet,
    OmegaBox,
    PseudoDiskH,
    Rectangle,
    pseudo_disk_chart,
)
from carleson_lab.internal.helpers import parallel_map
from carleson_lab.internal.measures import (
    Estimate,
    IntegrationConfig,
    integrate,
    mu,
    pseudo_disk_measure,
    rectangle_mu_mass,
    tau,
)
from carleson_lab.internal.pullback import (
    AgreementCheck,
    LevelSampler,
    TailAuditReport,
    validate_lambda_grid,
)
from carleson_lab.internal.quadrature import (
    integrate_rectangle,
    quarter_array,
    tensor_gauss,
)
from carleson_lab.internal.selfmaps import Affine, Composition, HoloMap, harnack_constant

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-6
DEFAULT_N_MAX = 12

# squares per vectorised quadrature call
_BATCH = 2048


def _require_half_plane(f: HoloMap):
    if f.domain is not Domain.HALF_PLANE:
        raise DomainMismatch(
            "dyadic averages need a map defined on Π⁺", map=f.descriptor
        )


class DyadicAverager:
    """
    Cached averages (1/A(Q)) ∫_Q |f| dA over dyadic squares of Ω, computed
    in vectorised batches and refined adaptively where the tensor rule does
    not meet `tol`.
    """

    def __init__(
        self,
        f: HoloMap,
        cfg: IntegrationConfig = IntegrationConfig(),
        tol: float = DEFAULT_TOLERANCE,
    ):
        _require_half_plane(f)
        if not tol > 0:
            raise InvalidGrid("tolerance must be positive", tol=tol)
        self.f = f
        self.cfg = cfg
        self.tol = tol
        self._cache: Dict[DyadicIndex, Tuple[float, float]] = {}
        self._lock = threading.RLock()

    def _modulus(self, x, y):
        return np.abs(self.f.evaluate_array(x + 1j * y))

    def _batch(self, indices: Sequence[DyadicIndex]) -> List[Tuple[float, float]]:
        boxes = np.array([i.bounds.as_tuple() for i in indices], dtype=float)
        areas = (boxes[:, 1] - boxes[:, 0]) * (boxes[:, 3] - boxes[:, 2])
        coarse = tensor_gauss(self._modulus, boxes)
        fine = tensor_gauss(self._modulus, quarter_array(boxes)).reshape(-1, 4).sum(axis=1)
        errors = np.abs(fine - coarse)
        result = []
        for i, index in enumerate(indices):
            value, error = float(fine[i]), float(errors[i])
            if error > self.tol * areas[i]:
                refined = integrate_rectangle(
                    self._modulus,
                    index.bounds,
                    rel_tol=self.cfg.rel_tol,
                    abs_tol=self.tol * areas[i],
                    max_subdivisions=self.cfg.max_subdivisions,
                )
                value, error = refined.value, refined.error
            result.append((value / areas[i], error / areas[i]))
        return result

    def averages(self, indices: Iterable[DyadicIndex]) -> List[Tuple[float, float]]:
        """(average, error) for every index, in order."""
        indices = list(indices)
        with self._lock:
            missing = sorted({i for i in indices if i not in self._cache})
        batches = [missing[i : i + _BATCH] for i in range(0, len(missing), _BATCH)]
        for batch, values in zip(
            batches, parallel_map(self._batch, batches, self.cfg.workers)
        ):
            with self._lock:
                self._cache.update(zip(batch, values))
        with self._lock:
            return [self._cache[i] for i in indices]

    def average(self, index: DyadicIndex) -> Tuple[float, float]:
        return self.averages([index])[0]

    def center_value(self, index: DyadicIndex) -> float:
        return float(abs(complex(self.f.evaluate_array(np.array([index.center]))[0])))

    def sup_bound(self, index: DyadicIndex) -> float:
        """
        An upper bound of |f| on the square, inf when none is available.
        For f: Π⁺ → Π⁺ the square lies in Δ(c, s) with s = (a/√2)/(x0 + x_c)
        and Harnack gives |f| <= M_s |f(c)|; maps into D are bounded by 1.
        """
        if self.f.codomain is Domain.DISK:
            return 1.0
        box = index.bounds
        s = (box.width / math.sqrt(2)) / (box.x0 + index.center.real)
        if s >= 1:
            return math.inf
        return harnack_constant(s) * self.center_value(index)


@dataclass(frozen=True)
class PiecewiseDyadicFunction:
    """E_n|f|: one average per generation-n square, values[j, k]."""

    n: int
    values: np.ndarray
    errors: np.ndarray

    def average(self, index: DyadicIndex) -> float:
        if index.n != self.n:
            raise InvalidGrid(
                "square of generation {} in a generation-{} table".format(index.n, self.n)
            )
        return float(self.values[index.j, index.k])

    def __call__(self, z: complex) -> float:
        index = DyadicIndex.containing(z, self.n, strict=False)
        return float(self.values[index.j, index.k])

    def coarsen(self) -> "PiecewiseDyadicFunction":
        """E_{n-1} rebuilt from this table: parents average their 4 children."""
        if self.n == 0:
            raise InvalidGrid("generation 0 has no parent")
        half = self.values.shape[0] // 2
        values = self.values.reshape(half, 2, half, 2).mean(axis=(1, 3))
        errors = self.errors.reshape(half, 2, half, 2).mean(axis=(1, 3))
        return PiecewiseDyadicFunction(self.n - 1, values, errors)

    @property
    def max_error(self) -> float:
        return float(self.errors.max())

    def to_record(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "values": self.values.tolist(),
            "errors": self.errors.tolist(),
        }


def _check_generation(n: int, n_max: int):
    if not 0 <= n <= n_max:
        raise InvalidGrid("generation must lie in [0, {}]".format(n_max), n=n)


def conditional_expectation(
    f: HoloMap,
    n: int,
    cfg: IntegrationConfig = IntegrationConfig(),
    tol: float = DEFAULT_TOLERANCE,
    n_max: int = DEFAULT_N_MAX,
    averager: Optional[DyadicAverager] = None,
) -> PiecewiseDyadicFunction:
    _check_generation(n, n_max)
    averager = averager or DyadicAverager(f, cfg, tol)
    side = 1 << n
    indices = [DyadicIndex(n, j, k) for j in range(side) for k in range(side)]
    pairs = np.array(averager.averages(indices), dtype=float).reshape(side, side, 2)
    return PiecewiseDyadicFunction(n, pairs[:, :, 0], pairs[:, :, 1])


def containing_squares(z: complex, n_max: int) -> List[DyadicIndex]:
    return [DyadicIndex.containing(z, n) for n in range(n_max + 1)]


def maximal_function(
    f: HoloMap,
    z: complex,
    n_max: int = DEFAULT_N_MAX,
    cfg: IntegrationConfig = IntegrationConfig(),
    tol: float = DEFAULT_TOLERANCE,
    averager: Optional[DyadicAverager] = None,
) -> float:
    """Mf(z) truncated at generation n_max: max of E_n|f|(z), 0 <= n <= n_max."""
    if n_max < 0:
        raise InvalidGrid("n_max must be nonnegative", n_max=n_max)
    averager = averager or DyadicAverager(f, cfg, tol)
    return max(value for value, _ in averager.averages(containing_squares(z, n_max)))


@dataclass(frozen=True)
class StoppingSquare:
    index: DyadicIndex
    average: float
    error: float
    center_value: float

    def to_record(self) -> Dict[str, Any]:
        return {
            "n": self.index.n,
            "j": self.index.j,
            "k": self.index.k,
            "average": self.average,
            "error": self.error,
            "center_value": self.center_value,
        }


@dataclass
class CZResult:
    map: str
    squares: List[StoppingSquare]
    n_max: int
    tol: float
    residual: List[DyadicIndex] = field(default_factory=list)
    ambiguous: List[DyadicIndex] = field(default_factory=list)
    visited: int = 0
    pruned: int = 0
    holo: Optional[HoloMap] = field(default=None, repr=False, compare=False)

    @property
    def indices(self) -> List[DyadicIndex]:
        return [s.index for s in self.squares]

    @property
    def area(self) -> float:
        return sum(s.index.bounds.area for s in self.squares)

    @property
    def residual_area(self) -> float:
        return sum(i.bounds.area for i in self.residual)

    @property
    def max_error(self) -> float:
        return max((s.error for s in self.squares), default=0.0)

    def disjoint(self) -> bool:
        """No stopping square contains another; equal generations never overlap."""
        indices = self.indices
        if len(set(indices)) != len(indices):
            return False
        known = set(indices)
        return not any(a in known for i in indices for a in i.ancestors())

    def to_record(self) -> Dict[str, Any]:
        return {
            "map": self.map,
            "n_max": self.n_max,
            "tol": self.tol,
            "squares": [s.to_record() for s in self.squares],
            "area": self.area,
            "residual": {
                "squares": [list(i.as_tuple()) for i in self.residual],
                "area": self.residual_area,
                "ambiguous": [list(i.as_tuple()) for i in self.ambiguous],
                "visited": self.visited,
                "pruned": self.pruned,
            },
        }

    def rows(self) -> List[Dict[str, Any]]:
        return [s.to_record() for s in self.squares]


def _exceeds(value: float, error: float) -> bool:
    return value - error > 1


def _below(value: float, error: float) -> bool:
    return value + error <= 1


# nodes of the capped-square check: |f| <= 1 on them leaves no residual
_NODES = np.linspace(0.0, 1.0, 9)


def _may_exceed(averager: DyadicAverager, index: DyadicIndex) -> bool:
    box = index.bounds
    x = box.x0 + box.width * _NODES
    y = box.y0 + box.height * _NODES
    z = x[:, None] + 1j * y[None, :]
    # the left edge of a boundary square lies on the imaginary axis
    z = np.where(z.real > 0, z, z + box.width * 1e-9)
    return bool(np.max(np.abs(averager.f.evaluate_array(z))) > 1)


def cz_decompose(
    f: HoloMap,
    cfg: IntegrationConfig = IntegrationConfig(),
    n_max: int = DEFAULT_N_MAX,
    tol: float = DEFAULT_TOLERANCE,
    prune: bool = True,
    averager: Optional[DyadicAverager] = None,
) -> CZResult:
    """
    Stopping-time decomposition: starting from Ω, emit the squares whose
    average exceeds 1 and recurse into the others down to generation n_max.

    With `prune`, subtrees on which Harnack bounds |f| by 1 are skipped:
    none of their squares can have an average above 1.
    """
    if n_max < 0:
        raise InvalidGrid("n_max must be nonnegative", n_max=n_max)
    averager = averager or DyadicAverager(f, cfg, tol)
    root = DyadicIndex(0, 0, 0)
    value, error = averager.average(root)
    if _exceeds(value, error):
        raise RootAverageExceedsOne(
            "E_0|f| exceeds 1", map=f.descriptor, average=value, error=error
        )

    squares: List[StoppingSquare] = []
    ambiguous: List[DyadicIndex] = [] if _below(value, error) else [root]
    frontier = [root]
    visited, pruned = 1, 0
    for n in range(1, n_max + 1):
        children = [c for parent in frontier for c in parent.children()]
        if prune:
            kept = [c for c in children if averager.sup_bound(c) > 1]
            pruned += len(children) - len(kept)
            children = kept
        visited += len(children)
        frontier = []
        for child, (value, error) in zip(children, averager.averages(children)):
            if _exceeds(value, error):
                squares.append(
                    StoppingSquare(child, value, error, averager.center_value(child))
                )
                continue
            if not _below(value, error):
                ambiguous.append(child)
            frontier.append(child)
        logger.debug(
            "generation %d: %d stopping squares, %d open", n, len(squares), len(frontier)
        )
        if not frontier:
            break

    residual = [i for i in frontier if i.n == n_max and _may_exceed(averager, i)]
    squares.sort(key=lambda s: s.index)
    result = CZResult(
        f.descriptor,
        squares,
        n_max,
        tol,
        sorted(residual),
        sorted(ambiguous),
        visited,
        pruned,
        f,
    )
    logger.info(
        "CZ decomposition of %s: %d squares, %d visited, %d pruned, residual area %.3g",
        f.descriptor,
        len(squares),
        visited,
        pruned,
        result.residual_area,
    )
    return result


def brute_force_stopping_squares(
    f: HoloMap,
    depth: int,
    cfg: IntegrationConfig = IntegrationConfig(),
    tol: float = DEFAULT_TOLERANCE,
    averager: Optional[DyadicAverager] = None,
) -> List[DyadicIndex]:
    """
    Squares of generation <= depth whose average exceeds 1 while no strict
    ancestor does, read off the full conditional-expectation tables.
    """
    averager = averager or DyadicAverager(f, cfg, tol)
    tables = [
        conditional_expectation(f, n, cfg, tol, n_max=depth, averager=averager)
        for n in range(depth + 1)
    ]

    def exceeds(index: DyadicIndex) -> bool:
        table = tables[index.n]
        return _exceeds(
            float(table.values[index.j, index.k]), float(table.errors[index.j, index.k])
        )

    found = []
    for n in range(depth + 1):
        side = 1 << n
        for j in range(side):
            for k in range(side):
                index = DyadicIndex(n, j, k)
                if exceeds(index) and not any(exceeds(a) for a in index.ancestors()):
                    found.append(index)
    return sorted(found)


# precision regions


@dataclass(frozen=True)
class PrecisionRegion:
    index: DyadicIndex
    kind: str  # "square" or "pseudo-disk"
    delta0: float
    tau_region: Estimate
    tau_square: Estimate
    min_ratio: float
    contained: bool

    @property
    def ratio(self) -> float:
        if self.tau_square.value == 0:
            return 0.0
        return self.tau_region.value / self.tau_square.value

    @property
    def lower_bound_ok(self) -> bool:
        return self.min_ratio > self.delta0

    def to_record(self) -> Dict[str, Any]:
        return {
            "square": list(self.index.as_tuple()),
            "kind": self.kind,
            "delta0": self.delta0,
            "tau_region": self.tau_region.to_record(),
            "tau_square": self.tau_square.to_record(),
            "ratio": self.ratio,
            "min_ratio": self.min_ratio,
            "contained": self.contained,
            "lower_bound_ok": self.lower_bound_ok,
        }


@dataclass
class PrecisionReport:
    alpha: float
    regions: List[PrecisionRegion]
    c_mu: float

    @property
    def c_emp(self) -> Optional[float]:
        return min((r.ratio for r in self.regions), default=None)

    @property
    def passed(self) -> bool:
        return all(r.contained and r.lower_bound_ok for r in self.regions)

    def to_record(self) -> Dict[str, Any]:
        return {
            "alpha": self.alpha,
            "c_emp": self.c_emp,
            "c_mu": self.c_mu,
            "passed": self.passed,
            "regions": [r.to_record() for r in self.regions],
        }


def notouch_delta() -> float:
    """1/M_s for the radius s with Q ⊆ Δ(c_Q, s) on squares off the axis."""
    return 1 / harnack_constant(constants.NOTOUCH_RADIUS)


def boundary_delta() -> float:
    return 1 / harnack_constant(constants.PRECISION_RADIUS)


def precision_constant(alpha: float, cfg: IntegrationConfig = IntegrationConfig()) -> float:
    """μ_α(Δ(1, 1/4))/μ_α(Ω); μ_α is homogeneous, so every boundary square
    has the same ratio."""
    disk = pseudo_disk_measure(mu(alpha), 1 + 0j, constants.PRECISION_RADIUS, cfg)
    return disk.value / rectangle_mu_mass(alpha, OMEGA)


def precision_regions(
    result: CZResult,
    alpha: float,
    cfg: IntegrationConfig = IntegrationConfig(),
    point_count: int = 256,
) -> PrecisionReport:
    """
    R_l = Q_l off the axis and R_l = Δ(c_l, 1/4) on it, with the sampled
    check that R_l ⊆ Q_l and |f| > δ₀|f(c_l)| on R_l.
    """
    f = result.holo
    if f is None:
        raise InvalidRegion("the decomposition does not carry its map")
    measure = tau(alpha)
    streams = cfg.streams
    regions = []
    for square in result.squares:
        index = square.index
        center = index.center
        rng = streams.generator("precision", *index.as_tuple())
        tau_square = integrate(
            measure, Box(index.bounds), cfg, ("precision-square",) + index.as_tuple()
        )
        if index.touches_boundary:
            kind, delta0 = "pseudo-disk", boundary_delta()
            chart = pseudo_disk_chart(center, Domain.HALF_PLANE)
            z = chart.forward(
                sampling.sample_uniform_disk(constants.PRECISION_RADIUS, point_count, rng)
            )
            tau_region = integrate(
                measure,
                PseudoDiskH(center, constants.PRECISION_RADIUS),
                cfg,
                ("precision-disk",) + index.as_tuple(),
            )
        else:
            kind, delta0 = "square", notouch_delta()
            z = sampling.sample_uniform_box(index.bounds, point_count, rng)
            tau_region = tau_square
        contained = bool(np.all(index.bounds.contains_array(z, half_open=False)))
        ratios = np.abs(f.evaluate_array(z)) / square.center_value
        regions.append(
            PrecisionRegion(
                index, kind, delta0, tau_region, tau_square, float(ratios.min()), contained
            )
        )
    return PrecisionReport(alpha, regions, precision_constant(alpha, cfg))


# mean values


@dataclass(frozen=True)
class MeanValueAudit:
    average: float
    error: float
    center_value: float
    tol: float

    @property
    def ratio(self) -> float:
        """avg/((π/4)|f(c)|), the empirical upper constant."""
        return self.average / (math.pi / 4 * self.center_value)

    @property
    def lower_ok(self) -> bool:
        return self.average >= math.pi / 4 * self.center_value - self.tol

    def to_record(self) -> Dict[str, Any]:
        return {
            "average": self.average,
            "error": self.error,
            "center_value": self.center_value,
            "ratio": self.ratio,
            "lower_ok": self.lower_ok,
        }


def mean_value_audit(
    f: HoloMap,
    square,
    cfg: IntegrationConfig = IntegrationConfig(),
    tol: float = DEFAULT_TOLERANCE,
) -> MeanValueAudit:
    """Average of |f| over a square of the closed half-plane against (π/4)|f(c)|."""
    _require_half_plane(f)
    rect = square.bounds if isinstance(square, DyadicIndex) else square
    if not isinstance(rect, Rectangle) or rect.x0 < 0 or rect.area == 0:
        raise InvalidRegion("the square must lie in the closed right half-plane")
    result = integrate_rectangle(
        lambda x, y: np.abs(f.evaluate_array(x + 1j * y)),
        rect,
        rel_tol=cfg.rel_tol,
        abs_tol=tol * rect.area,
        max_subdivisions=cfg.max_subdivisions,
    )
    center_value = float(abs(complex(f.evaluate_array(np.array([rect.center]))[0])))
    return MeanValueAudit(
        result.value / rect.area, result.error / rect.area, center_value, tol
    )


# the counterexample f(w) = exp(T(w)^4)


@dataclass
class RemarkReport:
    t: Tuple[float, ...]
    sigma: List[float]
    sigma_error: List[float]
    slope: Optional[float]
    curvature: Optional[float]
    witness: Optional[float]
    identity: float

    @property
    def slope_error(self) -> Optional[float]:
        if self.slope is None:
            return None
        return abs(self.slope / constants.REMARK_SLOPE - 1)

    def rows(self) -> List[Dict[str, Any]]:
        return [
            {
                "t": t,
                "sigma": self.sigma[i],
                "sigma_error": self.sigma_error[i],
                "q": (self.sigma[i] - 1) / t**4,
            }
            for i, t in enumerate(self.t)
        ]

    def to_record(self) -> Dict[str, Any]:
        return {
            "slope": self.slope,
            "expected_slope": constants.REMARK_SLOPE,
            "slope_relative_error": self.slope_error,
            "curvature": self.curvature,
            "witness": self.witness,
            "polynomial_identity": self.identity,
            "rows": self.rows(),
        }


_UNIT_SQUARE = Rectangle(-1.0, 1.0, -1.0, 1.0)


def _sigma_minus_one(t: float, cfg: IntegrationConfig) -> Tuple[float, float]:
    """σ(t) - 1 = (1/4)∬ expm1(Re T(1 + t(x+iy))^4) dx dy over [-1, 1]^2."""

    def integrand(x, y):
        u = t * (x + 1j * y)
        # T(1 + u) = -u/(2 + u), exact near u = 0
        return np.expm1(np.real((-u / (2 + u)) ** 4))

    scale = t**4 / 60
    result = integrate_rectangle(
        integrand,
        _UNIT_SQUARE,
        rel_tol=min(cfg.rel_tol, 1e-10),
        abs_tol=scale * 1e-10,
        max_subdivisions=cfg.max_subdivisions,
    )
    return result.value / 4, result.error / 4


def remark_polynomial_identity(cfg: IntegrationConfig = IntegrationConfig()) -> float:
    """(1/4)∬_{[-1,1]^2} (x^4 + y^4 - 6x^2y^2)/16 dx dy, which is -1/60."""
    result = integrate_rectangle(
        lambda x, y: (x**4 + y**4 - 6 * x * x * y * y) / 16,
        _UNIT_SQUARE,
        rel_tol=1e-12,
        abs_tol=1e-14,
        max_subdivisions=cfg.max_subdivisions,
    )
    return result.value / 4


def remark_counterexample(
    t_grid: Sequence[float], cfg: IntegrationConfig = IntegrationConfig()
) -> RemarkReport:
    """
    σ(t), the mean of |exp(T^4)| over 1 + t[-1, 1]^2, on a grid of t in
    (0, 1/2]. q(t) = (σ(t) - 1)/t^4 is fitted by a + b t^4, the moments of the
    square that survive being those of degree 4m; the intercept a is the
    slope of s ↦ σ(s^{1/4}) at 0. The witness is the smallest grid t
    with σ(t) < 1 beyond its error.
    """
    t_grid = tuple(sorted(float(t) for t in t_grid))
    if not t_grid or any(not 0 < t <= 0.5 for t in t_grid):
        raise InvalidGrid("t values must lie in (0, 1/2]", t=list(t_grid))
    pairs = parallel_map(lambda t: _sigma_minus_one(t, cfg), t_grid, cfg.workers)
    delta = [p[0] for p in pairs]
    errors = [p[1] for p in pairs]
    slope = curvature = None
    if len(t_grid) >= 2:
        t = np.array(t_grid)
        q = np.array(delta) / t**4
        curvature, slope = (float(c) for c in np.polyfit(t**4, q, 1))
    elif t_grid:
        slope = delta[0] / t_grid[0] ** 4
    witness = next((t for t, d, e in zip(t_grid, delta, errors) if d + e < 0), None)
    report = RemarkReport(
        t_grid,
        [1 + d for d in delta],
        errors,
        slope,
        curvature,
        witness,
        remark_polynomial_identity(cfg),
    )
    logger.info(
        "remark: slope %.6g (expected %.6g), witness %s",
        slope,
        constants.REMARK_SLOPE,
        witness,
    )
    return report


# the final chain


def theo_clef_chain_audit(
    f: HoloMap,
    alpha: float,
    lambdas: Sequence[float],
    cfg: IntegrationConfig = IntegrationConfig(),
    result: Optional[CZResult] = None,
    trend_limit: float = 0.05,
    n_max: int = DEFAULT_N_MAX,
    tol: float = DEFAULT_TOLERANCE,
) -> TailAuditReport:
    """
    Checks, per λ, τ_α(|f| > λ ∩ Ω) λ^{α+2} against Σ τ_α(Q_l), and the
    lower chain τ_α(|f| > δ₁ ∩ Ω) >= c Σ τ_α(Q_l), where δ₁ = (4/πC)δ₀ with
    C the largest mean-value ratio over the stopping squares. Center values
    must stay below 16/π.
    """
    lambdas = validate_lambda_grid(lambdas)
    _require_half_plane(f)
    if result is None:
        result = cz_decompose(f, cfg, n_max=n_max, tol=tol)
    measure = tau(alpha)
    squares = result.squares

    stopped = Estimate(0.0, 0.0, 0)
    for square in squares:
        part = integrate(
            measure,
            Box(square.index.bounds),
            cfg,
            ("chain-square",) + square.index.as_tuple(),
        )
        stopped = Estimate(
            stopped.value + part.value,
            math.hypot(stopped.error_bar, part.error_bar),
            stopped.samples_used + part.samples_used,
        )

    sampler = LevelSampler(f, measure, OmegaBox(), cfg, ("chain",))
    estimates = [sampler.measure(lam) for lam in lambdas]

    mean_constant = max(
        (s.average / (math.pi / 4 * s.center_value) for s in squares), default=None
    )
    delta0 = min(notouch_delta(), boundary_delta())
    center_max = max((s.center_value for s in squares), default=0.0)
    checks = {
        "center_bound": center_max <= constants.CENTER_VALUE_BOUND + tol,
        "averages_in_range": all(
            1 - s.error <= s.average <= 4 + s.error + tol for s in squares
        ),
    }
    extra: Dict[str, Any] = {
        "stopping_squares": len(squares),
        "center_max": center_max,
        "center_bound": constants.CENTER_VALUE_BOUND,
        "mean_constant": mean_constant,
        "delta0": delta0,
    }
    if squares:
        precision = precision_regions(result, alpha, cfg)
        delta1 = 4 / (math.pi * mean_constant) * delta0
        lower = integrate(measure, LevelSet(f, delta1, OmegaBox()), cfg, ("chain-lower",))
        spread = math.hypot(lower.error_bar, precision.c_emp * stopped.error_bar)
        checks["lower_chain"] = (
            lower.value + 4 * spread >= precision.c_emp * stopped.value
        )
        checks["precision"] = precision.passed
        extra.update(
            {
                "delta1": delta1,
                "lambda1": 1 / delta1,
                "c_emp": precision.c_emp,
                "lower_mass": lower.to_record(),
            }
        )

    report = TailAuditReport(
        "theoclef-chain",
        alpha,
        f.descriptor,
        alpha + 2,
        lambdas,
        [e.value for e in estimates],
        [e.error_bar for e in estimates],
        [sampler.hits(lam) for lam in lambdas],
        stopped.value,
        stopped.error_bar,
        trend_limit,
        extra,
        checks,
    )
    if report.violation:
        logger.warning("chain audit of %s failed: %s", f.descriptor, checks)
    return report


def homogeneity_transport_check(
    f: HoloMap,
    alpha: float,
    lam: float,
    h: float,
    cfg: IntegrationConfig = IntegrationConfig(),
) -> AgreementCheck:
    """
    μ_α(|f| > λ ∩ hΩ) against h^{α+2} μ_α(|f_h| > λ ∩ Ω), f_h(w) = f(hw).
    """
    _require_half_plane(f)
    if not 0 < h <= 1:
        raise InvalidRegion("h must lie in (0, 1]", h=h)
    measure = mu(alpha)
    scaled_box = Rectangle(h * OMEGA.x0, h * OMEGA.x1, h * OMEGA.y0, h * OMEGA.y1)
    left = integrate(
        measure, LevelSet(f, lam, Box(scaled_box)), cfg, ("homogeneity", "scaled", repr(h))
    )
    f_h = Composition((f, Affine(h)))
    right = integrate(
        measure, LevelSet(f_h, lam, OmegaBox()), cfg, ("homogeneity", "unit", repr(h))
    )
    factor = h ** (alpha + 2)
    return AgreementCheck(
        left,
        Estimate(factor * right.value, factor * right.error_bar, right.samples_used),
        ("scaled", "unit"),
    )
