#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

"""
Weighted measures on D and Π⁺ and the integration engine.

    A_α   (α+1)(1-|z|^2)^α dxdy/π on D
    τ_α   push-forward of A_α by T, a probability measure on Π⁺
    μ_α   x^α dxdy on Π⁺, μ_0 is the area measure
    σ_α   push-forward of A_α by L = E^{-1}, carried by Ω

Smooth densities over rectangles and polar sectors are integrated by
quadrature after the substitutions u = (1-r^2)^{α+1} (A_α) and
u = x^{α+1}/(α+1) (half-plane measures), which absorb the integrable
singularities of negative weights; the mass of Π⁺ under τ_α is integrated
from its density pulled back to D by T. Regions defined through an analytic
map are integrated by Monte Carlo.
"""

import dataclasses
import enum
import logging
import math
from dataclasses import dataclass
from typing import Any, Callable, Dict, NamedTuple, Optional, Tuple, Union

import numpy as np

from carleson_lab.internal import constants, sampling
from carleson_lab.internal.exceptions import (
    ConfigError,
    DomainMismatch,
    InvalidRegion,
    InvalidWeight,
    SingularPoint,
    SingularRatio,
    UnboundedRegionWithInfiniteMass,
)
from carleson_lab.internal.geometry import (
    OMEGA,
    Annulus,
    Box,
    ComplexPoint,
    Domain,
    DyadicSquare,
    OmegaBox,
    PseudoDiskD,
    PseudoDiskH,
    Rectangle,
    Region,
    RightHalfPlane,
    UnitDisk,
    Window,
    cayley_array,
    cayley_derivative_array,
    log_map_array,
    pseudo_disk_chart,
)
from carleson_lab.internal.helpers import parallel_map
from carleson_lab.internal.quadrature import integrate_rectangle

logger = logging.getLogger(__name__)

TWO_PI = 2 * math.pi


class MeasureFamily(enum.Enum):
    BERGMAN = "bergman"
    TAU = "tau"
    MU = "mu"
    SIGMA = "sigma"
    AREA = "area"


@dataclass(frozen=True)
class Measure:
    family: MeasureFamily
    alpha: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "family", MeasureFamily(self.family))
        object.__setattr__(self, "alpha", sampling.check_alpha(self.alpha))
        if self.family is MeasureFamily.AREA and self.alpha != 0:
            raise InvalidWeight("the area measure has α = 0", alpha=self.alpha)

    @property
    def support(self) -> Domain:
        if self.family is MeasureFamily.BERGMAN:
            return Domain.DISK
        return Domain.HALF_PLANE

    @property
    def total_mass(self) -> float:
        if self.family in (MeasureFamily.BERGMAN, MeasureFamily.TAU):
            return 1.0
        if self.family is MeasureFamily.SIGMA:
            return (-math.expm1(-2 * TWO_PI)) ** (self.alpha + 1)
        return math.inf

    @property
    def name(self) -> str:
        if self.family is MeasureFamily.AREA:
            return "area"
        return "{}[{:g}]".format(self.family.value, self.alpha)

    def density(self, z: ComplexPoint) -> float:
        """
        Pointwise density: relative to dA = dxdy/π for A_α, relative to dxdy
        for the half-plane measures.
        """
        if z.domain not in (self.support, Domain.PLANE):
            raise DomainMismatch(
                "{} lives in the {}".format(self.name, self.support.value),
                point=z.domain.value,
            )
        if self.support is Domain.DISK:
            if not abs(z.value) < 1:
                raise DomainMismatch("point is outside D", re=z.re, im=z.im)
            return float(self.density_array(np.array([z.value]))[0])
        if z.re < 0:
            raise DomainMismatch("point is outside Π⁺", re=z.re, im=z.im)
        if z.re == 0:
            if self.alpha < 0:
                raise SingularPoint(
                    "{} is singular on the imaginary axis".format(self.name),
                    re=z.re,
                    im=z.im,
                )
            if self.alpha > 0 or self.family is MeasureFamily.SIGMA:
                return 0.0
        return float(self.density_array(np.array([z.value]))[0])

    def density_array(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        a = self.alpha
        if self.family is MeasureFamily.BERGMAN:
            return (a + 1) * (1 - np.abs(z) ** 2) ** a
        return z.real**a * self.smooth_factor_array(z)

    def lebesgue_density_array(self, z: np.ndarray) -> np.ndarray:
        """Density relative to dxdy for every family."""
        if self.family is MeasureFamily.BERGMAN:
            return self.density_array(z) / math.pi
        return self.density_array(z)

    @property
    def x_exponent(self) -> float:
        """The power of Re z split off the half-plane densities."""
        return self.alpha

    def smooth_factor_array(self, z: np.ndarray) -> np.ndarray:
        """
        density / x^α for half-plane measures; bounded and smooth on Ω.
        """
        z = np.asarray(z, dtype=complex)
        a = self.alpha
        if self.family in (MeasureFamily.MU, MeasureFamily.AREA):
            return np.ones(z.shape)
        if self.family is MeasureFamily.TAU:
            return 4 ** (a + 1) * (a + 1) / math.pi / np.abs(1 + z) ** (2 * (a + 2))
        if self.family is MeasureFamily.SIGMA:
            x = z.real
            inside = (x > 0) & (x < 2) & (z.imag > -1) & (z.imag < 1)
            safe = np.where(inside, x, 1.0)
            value = (
                math.pi
                * (a + 1)
                * np.exp(-TWO_PI * safe)
                * (-np.expm1(-TWO_PI * safe) / safe) ** a
            )
            return np.where(inside, value, 0.0)
        raise InvalidWeight("no half-plane factor for {}".format(self.name))


def bergman(alpha: float) -> Measure:
    return Measure(MeasureFamily.BERGMAN, alpha)


def tau(alpha: float) -> Measure:
    return Measure(MeasureFamily.TAU, alpha)


def mu(alpha: float) -> Measure:
    return Measure(MeasureFamily.MU, alpha)


def sigma(alpha: float) -> Measure:
    return Measure(MeasureFamily.SIGMA, alpha)


def area() -> Measure:
    return Measure(MeasureFamily.AREA, 0.0)


class Method(enum.Enum):
    AUTO = "auto"
    MONTE_CARLO = "mc"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class IntegrationConfig:
    method: Method = Method.AUTO
    sample_count: int = constants.DEFAULT_SAMPLE_COUNT
    max_subdivisions: int = constants.DEFAULT_MAX_SUBDIVISIONS
    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    mc_rel_tol: float = 0.25
    seed: int = constants.DEFAULT_SEED
    workers: int = 1
    chunk_size: int = constants.DEFAULT_CHUNK_SIZE

    def __post_init__(self):
        object.__setattr__(self, "method", Method(self.method))
        if self.sample_count < constants.MIN_SAMPLE_COUNT:
            raise ConfigError(
                "sample_count must be at least {}".format(constants.MIN_SAMPLE_COUNT),
                sample_count=self.sample_count,
            )
        for name in ("rel_tol", "abs_tol", "mc_rel_tol"):
            if not getattr(self, name) > 0:
                raise ConfigError("{} must be positive".format(name), key=name)
        if self.max_subdivisions < 1 or self.workers < 1 or self.chunk_size < 1:
            raise ConfigError(
                "max_subdivisions, workers and chunk_size must be positive",
                max_subdivisions=self.max_subdivisions,
                workers=self.workers,
                chunk_size=self.chunk_size,
            )

    @property
    def streams(self) -> sampling.StreamFactory:
        return sampling.StreamFactory(self.seed)

    def replace(self, **changes) -> "IntegrationConfig":
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class Estimate:
    value: float
    error_bar: float
    samples_used: int

    def __post_init__(self):
        if not self.error_bar >= 0:
            raise ValueError("error bar must be nonnegative")

    @property
    def relative_error(self) -> float:
        if self.value == 0:
            return 0.0 if self.error_bar == 0 else math.inf
        return self.error_bar / abs(self.value)

    def to_record(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "error": self.error_bar,
            "samples": self.samples_used,
        }


ZERO = Estimate(0.0, 0.0, 0)


def sample(m: Measure, count: int, seed: int) -> np.ndarray:
    """
    i.i.d. samples of the normalised measure m; deterministic given seed.
    """
    rng = sampling.StreamFactory(seed).generator("sample", m.family.value)
    if m.family is MeasureFamily.BERGMAN:
        return sampling.sample_bergman(m.alpha, count, rng)
    if m.family is MeasureFamily.TAU:
        return cayley_array(sampling.sample_bergman(m.alpha, count, rng))
    if m.family is MeasureFamily.SIGMA:
        return _sample_sigma(m.alpha, count, rng)
    raise UnboundedRegionWithInfiniteMass(
        "{} has infinite mass and cannot be sampled".format(m.name)
    )


def _sample_sigma(alpha: float, count: int, rng: np.random.Generator) -> np.ndarray:
    # A_α conditioned on the annulus U, then L
    u_hi = (-math.expm1(-2 * TWO_PI)) ** (alpha + 1)
    z = sampling.sample_bergman_shell(alpha, 0.0, u_hi, count, rng)
    z = np.where((z.imag == 0) & (z.real < 0), np.abs(z), z)
    return log_map_array(z)


# quadrature paths


def _bergman_polar(m: Measure, bounds, cfg: IntegrationConfig) -> Estimate:
    r0, r1, theta0, theta1 = bounds
    a = m.alpha
    u_lo, u_hi = (1 - r1 * r1) ** (a + 1), (1 - r0 * r0) ** (a + 1)
    result = integrate_rectangle(
        lambda u, theta: np.full(u.shape, 1 / TWO_PI),
        Rectangle(u_lo, u_hi, theta0, theta1),
        rel_tol=cfg.rel_tol,
        abs_tol=cfg.abs_tol,
        max_subdivisions=cfg.max_subdivisions,
    )
    return Estimate(result.value, result.error, result.evaluations)


def _cayley_image(z: np.ndarray, one_minus_r2: np.ndarray) -> np.ndarray:
    # Re T(z) = (1 - |z|^2)/|1 + z|^2 from the exact 1 - |z|^2
    return one_minus_r2 / np.abs(1 + z) ** 2 + 1j * cayley_array(z).imag


def _half_plane_by_cayley(m: Measure, cfg: IntegrationConfig) -> Estimate:
    """
    m(Π⁺) from the density of m, pulled back to D by T:

        m(Π⁺) = ∫_D m(T(z)) |T'(z)|^2 dxdy,

    in the polar variables u = (1 - r^2)^{α+1} and θ, where
    r dr = du / (2(α+1)(1 - r^2)^α).
    """
    a = m.alpha

    def integrand(u, theta):
        one_minus_r2 = u ** (1 / (a + 1))
        z = np.sqrt(1 - one_minus_r2) * np.exp(1j * theta)
        w = _cayley_image(z, one_minus_r2)
        jacobian = np.abs(cayley_derivative_array(z)) ** 2
        return (
            m.lebesgue_density_array(w)
            * jacobian
            / (2 * (a + 1) * one_minus_r2**a)
        )

    result = integrate_rectangle(
        integrand,
        Rectangle(0.0, 1.0, -math.pi, math.pi),
        rel_tol=cfg.rel_tol,
        abs_tol=cfg.abs_tol,
        max_subdivisions=cfg.max_subdivisions,
    )
    return Estimate(result.value, result.error, result.evaluations)


def _half_plane_rectangle(m: Measure, rect: Rectangle, cfg: IntegrationConfig) -> Estimate:
    if m.family is MeasureFamily.SIGMA:
        rect = rect.intersection(OMEGA)
        if rect is None:
            return ZERO
    x0 = max(rect.x0, 0.0)
    if rect.x1 <= x0 or rect.height == 0:
        return ZERO
    a = m.x_exponent
    u0, u1 = x0 ** (a + 1) / (a + 1), rect.x1 ** (a + 1) / (a + 1)

    def integrand(u, y):
        x = ((a + 1) * u) ** (1 / (a + 1))
        return m.smooth_factor_array(x + 1j * y)

    result = integrate_rectangle(
        integrand,
        Rectangle(u0, u1, rect.y0, rect.y1),
        rel_tol=cfg.rel_tol,
        abs_tol=cfg.abs_tol,
        max_subdivisions=cfg.max_subdivisions,
    )
    return Estimate(result.value, result.error, result.evaluations)


def pseudo_disk_measure(
    m: Measure, center: complex, r: float, cfg: IntegrationConfig
) -> Estimate:
    """
    m(Δ(center, r)) through the automorphism chart F: D(0, r) → Δ(center, r)
    and its Jacobian |F'|^2; polar quadrature, or Monte Carlo on uniform
    D(0, r) samples when the configured method is Monte Carlo.
    """
    center = complex(center)
    if not 0 < r < 1:
        raise InvalidRegion("radius must lie in (0, 1)", r=r)
    chart = pseudo_disk_chart(center, m.support)

    def pulled_back(zeta):
        return m.lebesgue_density_array(chart.forward(zeta)) * chart.jacobian(zeta)

    if cfg.method is Method.MONTE_CARLO:
        streams = cfg.streams

        def draw(index_size):
            index, size = index_size
            rng = streams.generator("pseudo-disk", index)
            return pulled_back(sampling.sample_uniform_disk(r, size, rng))

        weights = parallel_map(
            draw, list(sampling.chunks(cfg.sample_count, cfg.chunk_size)), cfg.workers
        )
        weights = np.concatenate(weights)
        return WeightedSamples(
            np.zeros(weights.size, dtype=complex), weights, math.pi * r * r, weights.size
        ).estimate()

    result = integrate_rectangle(
        lambda rho, theta: pulled_back(rho * np.exp(1j * theta)) * rho,
        Rectangle(0.0, r, -math.pi, math.pi),
        rel_tol=cfg.rel_tol,
        abs_tol=cfg.abs_tol,
        max_subdivisions=cfg.max_subdivisions,
    )
    return Estimate(result.value, result.error, result.evaluations)


# Monte Carlo paths


class WeightedSamples(NamedTuple):
    """
    Importance samples of a measure restricted to a region: only the points
    inside the region are kept, `count` is the number drawn and the measure
    of the region is estimated by scale * sum(weights) / count.
    """

    points: np.ndarray
    weights: np.ndarray
    scale: float
    count: int

    def estimate(self, mask: Optional[np.ndarray] = None) -> Estimate:
        if self.count == 0:
            return ZERO
        weights = self.weights if mask is None else self.weights[mask]
        mean = float(weights.sum()) / self.count
        second = float((weights * weights).sum()) / self.count
        variance = max(second - mean * mean, 0.0)
        return Estimate(
            self.scale * mean, self.scale * math.sqrt(variance / self.count), self.count
        )


def _proposal(m: Measure, region: Region):
    """(draw_points, scale) for importance sampling m over region, or None
    when the region is null for m."""
    box = region.bounding_box()
    a = m.alpha

    if m.support is Domain.DISK:
        polar = getattr(region, "polar_bounds", None)
        if polar is not None:
            r0, r1, theta0, theta1 = polar()
            u_lo, u_hi = (1 - r1 * r1) ** (a + 1), (1 - r0 * r0) ** (a + 1)
            scale = (u_hi - u_lo) * (theta1 - theta0) / TWO_PI
        else:
            u_lo, u_hi, theta0, theta1, scale = 0.0, 1.0, -math.pi, math.pi, 1.0

        def draw_points(rng, size):
            z = sampling.sample_bergman_shell(a, u_lo, u_hi, size, rng)
            if theta1 - theta0 < TWO_PI:
                angle = theta0 + (theta1 - theta0) * rng.random(size)
                z = np.abs(z) * np.exp(1j * angle)
            return z, np.ones(size)

        return draw_points, scale

    if box is not None:
        box = Rectangle(max(box.x0, 0.0), max(box.x1, 0.0), box.y0, box.y1)
        if m.family is MeasureFamily.SIGMA:
            box = box.intersection(OMEGA)
        if box is None or box.area == 0:
            return None
        exponent = m.x_exponent
        scale = sampling.power_mass(exponent, box.x0, box.x1) * box.height

        def draw_points(rng, size):
            z = sampling.sample_power_box(box, exponent, size, rng)
            return z, m.smooth_factor_array(z)

        return draw_points, scale

    if m.family is MeasureFamily.TAU:
        disk = bergman(a)

        # A_α pushed to Π⁺ by T, reweighted by the density of m
        def draw_points(rng, size):
            z = sampling.sample_bergman(a, size, rng)
            one_minus_r2 = 1 - np.abs(z) ** 2
            inside = one_minus_r2 > 0
            z = np.where(inside, z, 0.0)
            one_minus_r2 = np.where(inside, one_minus_r2, 1.0)
            w = _cayley_image(z, one_minus_r2)
            weights = (
                m.lebesgue_density_array(w)
                * np.abs(cayley_derivative_array(z)) ** 2
                / disk.lebesgue_density_array(z)
            )
            return np.where(inside, w, 0j), np.where(inside, weights, 0.0)

        return draw_points, 1.0

    if m.family is MeasureFamily.SIGMA:

        def draw_points(rng, size):
            return _sample_sigma(a, size, rng), np.ones(size)

        return draw_points, m.total_mass

    raise UnboundedRegionWithInfiniteMass(
        "{} has infinite mass over {}".format(m.name, region.describe())
    )


def weighted_samples(
    m: Measure, region: Region, cfg: IntegrationConfig, stream: Tuple
) -> WeightedSamples:
    """
    Draws cfg.sample_count importance samples chunk by chunk; chunk i uses
    the stream (*stream, i), so the result does not depend on cfg.workers.
    """
    proposal = _proposal(m, region)
    if proposal is None:
        empty = np.zeros(0)
        return WeightedSamples(empty.astype(complex), empty, 0.0, 0)
    draw_points, scale = proposal
    streams = cfg.streams

    def draw(index_size):
        index, size = index_size
        z, weights = draw_points(streams.generator(*stream, index), size)
        inside = region.contains_array(z)
        return z[inside], weights[inside]

    parts = parallel_map(
        draw, list(sampling.chunks(cfg.sample_count, cfg.chunk_size)), cfg.workers
    )
    return WeightedSamples(
        np.concatenate([p[0] for p in parts]),
        np.concatenate([p[1] for p in parts]),
        scale,
        cfg.sample_count,
    )


_RECTANGULAR = (Box, DyadicSquare, OmegaBox)
_POLAR = (UnitDisk, Window, Annulus)


def _quadrature_path(m: Measure, region: Region) -> Optional[Callable]:
    if m.support is Domain.DISK:
        if isinstance(region, _POLAR):
            return lambda cfg: _bergman_polar(m, region.polar_bounds(), cfg)
        if isinstance(region, PseudoDiskD):
            return lambda cfg: pseudo_disk_measure(m, region.center, region.r, cfg)
        return None
    if isinstance(region, _RECTANGULAR):
        return lambda cfg: _half_plane_rectangle(m, region.bounding_box(), cfg)
    if isinstance(region, PseudoDiskH):
        return lambda cfg: pseudo_disk_measure(m, region.center, region.r, cfg)
    if isinstance(region, RightHalfPlane):
        if m.family is MeasureFamily.TAU:
            return lambda cfg: _half_plane_by_cayley(m, cfg)
        if m.family is MeasureFamily.SIGMA:
            return lambda cfg: _half_plane_rectangle(m, OMEGA, cfg)
    return None


def integrate(
    m: Measure,
    region: Region,
    cfg: IntegrationConfig,
    stream: Tuple = ("integrate",),
) -> Estimate:
    """
    m(region) with an error bar: the quadrature residual, or the Monte Carlo
    standard error. `stream` names the random stream used by Monte Carlo.
    """
    if region.ambient is not m.support:
        raise DomainMismatch(
            "{} lives in the {}, the region in the {}".format(
                m.name, m.support.value, region.ambient.value
            )
        )
    if not region.bounded and math.isinf(m.total_mass):
        raise UnboundedRegionWithInfiniteMass(
            "{} has infinite mass over {}".format(m.name, region.describe())
        )

    quadrature = _quadrature_path(m, region)
    if quadrature is not None and cfg.method is not Method.MONTE_CARLO:
        estimate = quadrature(cfg)
    else:
        if quadrature is None and cfg.method is Method.QUADRATURE:
            logger.debug(
                "no quadrature rule for %s, using Monte Carlo", region.describe()
            )
        estimate = weighted_samples(m, region, cfg, stream).estimate()
    logger.debug(
        "%s(%s) = %.17g +- %.3g",
        m.name,
        region.describe(),
        estimate.value,
        estimate.error_bar,
    )
    return estimate


def window_measure_closed_form(alpha: float, h: float) -> float:
    """A_α(W(ξ, h)) = (h/π)(2h - h^2)^{α+1}, for every ξ."""
    alpha = sampling.check_alpha(alpha)
    if not 0 < h <= 1:
        raise InvalidRegion("h must lie in (0, 1]", h=h)
    return h / math.pi * (2 * h - h * h) ** (alpha + 1)


def rectangle_mu_mass(alpha: float, rect: Rectangle) -> float:
    """μ_α of a rectangle of the closed half-plane, in closed form."""
    return sampling.power_mass(alpha, max(rect.x0, 0.0), rect.x1) * rect.height


@dataclass(frozen=True)
class OmegaGrid:
    """Cell-centre lattice of Ω; never touches Re w = 0."""

    nx: int = 200
    ny: int = 200

    def __post_init__(self):
        if self.nx < 1 or self.ny < 1:
            raise ConfigError("grid sizes must be positive", nx=self.nx, ny=self.ny)

    def points(self) -> np.ndarray:
        x = (np.arange(self.nx) + 0.5) * (OMEGA.width / self.nx)
        y = OMEGA.y0 + (np.arange(self.ny) + 0.5) * (OMEGA.height / self.ny)
        return (x[:, None] + 1j * y[None, :]).ravel()


class RatioBounds(NamedTuple):
    lo: float
    hi: float


def _with_weight(m: Union[Measure, MeasureFamily, str], alpha: float) -> Measure:
    if not isinstance(m, Measure):
        family = MeasureFamily(m)
        return area() if family is MeasureFamily.AREA else Measure(family, alpha)
    if m.family is not MeasureFamily.AREA and m.alpha != alpha:
        raise InvalidWeight(
            "{} does not carry the weight α = {:g}".format(m.name, alpha), alpha=alpha
        )
    return m


def equivalence_ratio(
    alpha: float,
    a: Union[Measure, MeasureFamily, str],
    b: Union[Measure, MeasureFamily, str],
    grid: OmegaGrid = OmegaGrid(),
) -> RatioBounds:
    """
    min and max over the grid of the density ratio a/b on Ω. Families given
    without a weight take α.
    """
    alpha = sampling.check_alpha(alpha)
    a, b = _with_weight(a, alpha), _with_weight(b, alpha)
    for m in (a, b):
        if m.support is not Domain.HALF_PLANE:
            raise DomainMismatch(
                "equivalence ratios compare measures on Ω", measure=m.name
            )
    z = grid.points()
    numerator = a.density_array(z)
    denominator = b.density_array(z)
    if np.any(denominator <= 0) or np.any(numerator <= 0):
        raise SingularRatio(
            "a density vanishes on the grid", numerator=a.name, denominator=b.name
        )
    ratio = numerator / denominator
    return RatioBounds(float(ratio.min()), float(ratio.max()))
