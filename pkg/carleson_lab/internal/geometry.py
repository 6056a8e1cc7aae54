#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

"""
Geometry of the unit disk D and the right half-plane Π⁺.

Points carry a domain tag, the conformal transfers (the Cayley transform T,
E(w) = exp(-πw) and its inverse L) move them between domains, and regions
answer exact membership questions for single points and for numpy arrays of
complex numbers. The dyadic grid lives on Ω = (0, 2) x (-1, 1).
"""

import abc
import enum
import math
from dataclasses import dataclass, field
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from carleson_lab.internal import constants
from carleson_lab.internal.exceptions import (
    DomainMismatch,
    InvalidIndex,
    InvalidPoint,
    InvalidRegion,
    OnBranchSlit,
    OnDyadicBoundary,
    OutsideAnnulus,
    PoleAtMinusOne,
)

Complex = Union[complex, float, int]


class Domain(enum.Enum):
    DISK = "disk"
    HALF_PLANE = "half-plane"
    CIRCLE = "circle"
    PLANE = "plane"

    @classmethod
    def parse(cls, value: Union[str, "Domain"]) -> "Domain":
        if isinstance(value, Domain):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise InvalidPoint(
                "Unknown domain {!r}".format(value),
                choices=[d.value for d in cls],
            )


def in_domain(z: complex, domain: Domain) -> bool:
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        return False
    if domain is Domain.DISK:
        return z.real * z.real + z.imag * z.imag < 1.0
    if domain is Domain.HALF_PLANE:
        return z.real > 0.0
    if domain is Domain.CIRCLE:
        return abs(z.real * z.real + z.imag * z.imag - 1.0) <= (
            constants.CIRCLE_TOLERANCE
        )
    return True


@dataclass(frozen=True)
class ComplexPoint:
    re: float
    im: float
    domain: Domain = Domain.PLANE

    def __post_init__(self):
        object.__setattr__(self, "re", float(self.re))
        object.__setattr__(self, "im", float(self.im))
        object.__setattr__(self, "domain", Domain.parse(self.domain))
        if not in_domain(self.value, self.domain):
            raise InvalidPoint(
                "{} is not a point of the {}".format(self.value, self.domain.value),
                re=self.re,
                im=self.im,
                domain=self.domain.value,
            )

    @classmethod
    def of(cls, z: Complex, domain: Union[str, Domain] = Domain.PLANE):
        z = complex(z)
        return cls(z.real, z.imag, Domain.parse(domain))

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    def retag(self, domain: Domain) -> "ComplexPoint":
        return ComplexPoint(self.re, self.im, domain)

    def __complex__(self):
        return self.value


def as_complex(z: Union[ComplexPoint, Complex]) -> complex:
    if isinstance(z, ComplexPoint):
        return z.value
    return complex(z)


def circle_point(theta: float) -> ComplexPoint:
    return ComplexPoint(math.cos(theta), math.sin(theta), Domain.CIRCLE)


# conformal transfers


_CAYLEY_IMAGE = {
    Domain.DISK: Domain.HALF_PLANE,
    Domain.HALF_PLANE: Domain.DISK,
    # the circle goes to the imaginary axis, which is not an open domain
    Domain.CIRCLE: Domain.PLANE,
    Domain.PLANE: Domain.PLANE,
}


def cayley(z: ComplexPoint) -> ComplexPoint:
    """T(z) = (1 - z)/(1 + z). T is an involution exchanging D and Π⁺."""
    value = z.value
    if value == -1:
        raise PoleAtMinusOne("T has a pole at -1", re=z.re, im=z.im)
    target = _CAYLEY_IMAGE[z.domain]
    image = (1 - value) / (1 + value)
    if target is Domain.HALF_PLANE:
        # Re T(z) = (1 - |z|^2)/|1 + z|^2 keeps its sign under rounding
        image = complex(
            (1.0 - (z.re * z.re + z.im * z.im)) / abs(1 + value) ** 2, image.imag
        )
    return ComplexPoint.of(image, target)


def cayley_array(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    if np.any(z == -1):
        raise PoleAtMinusOne("T has a pole at -1")
    return (1 - z) / (1 + z)


def cayley_derivative_array(z: np.ndarray) -> np.ndarray:
    return -2.0 / (1 + np.asarray(z, dtype=complex)) ** 2


def exp_map(w: ComplexPoint) -> ComplexPoint:
    """E(w) = exp(-πw), mapping Π⁺ into D and Ω onto the annulus U."""
    if w.domain not in (Domain.HALF_PLANE, Domain.PLANE) or w.re <= 0:
        raise DomainMismatch(
            "E is defined on the right half-plane", domain=w.domain.value
        )
    return ComplexPoint.of(np.exp(-math.pi * w.value), Domain.DISK)


def exp_map_array(w: np.ndarray) -> np.ndarray:
    return np.exp(-math.pi * np.asarray(w, dtype=complex))


def log_map(z: ComplexPoint) -> ComplexPoint:
    """
    L = E^{-1} on the annulus U = {e^{-2π} < |z| < 1} minus the negative real
    axis; L(z) = -log(z)/π lands in Ω with Im L(z) in (-1, 1).
    """
    if z.domain not in (Domain.DISK, Domain.PLANE):
        raise DomainMismatch("L is defined on the unit disk", domain=z.domain.value)
    value = z.value
    modulus = abs(value)
    if modulus <= constants.ANNULUS_INNER_RADIUS or modulus >= 1.0:
        raise OutsideAnnulus(
            "|z| must lie in (exp(-2π), 1)", re=z.re, im=z.im, modulus=modulus
        )
    if z.im == 0.0 and z.re < 0.0:
        raise OnBranchSlit("z lies on the slit arg z = π", re=z.re, im=z.im)
    return ComplexPoint(
        -math.log(modulus) / math.pi,
        -math.atan2(z.im, z.re) / math.pi,
        Domain.HALF_PLANE,
    )


def log_map_array(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    modulus = np.abs(z)
    if np.any(modulus <= constants.ANNULUS_INNER_RADIUS) or np.any(modulus >= 1.0):
        raise OutsideAnnulus("|z| must lie in (exp(-2π), 1)")
    if np.any((z.imag == 0.0) & (z.real < 0.0)):
        raise OnBranchSlit("some points lie on the slit arg z = π")
    return (-np.log(modulus) - 1j * np.angle(z)) / math.pi


# pseudo-hyperbolic distances


def disk_distance_array(z: np.ndarray, w: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return np.abs((z - w) / (1 - np.conj(z) * w))


def half_plane_distance_array(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    return np.abs((a - b) / (np.conj(a) + b))


def pseudo_distance(a: ComplexPoint, b: ComplexPoint) -> float:
    """
    ρ′ on D and ρ on Π⁺. Both points must carry the same open-domain tag.
    """
    if a.domain != b.domain or a.domain not in (Domain.DISK, Domain.HALF_PLANE):
        raise DomainMismatch(
            "pseudo_distance needs two disk points or two half-plane points",
            left=a.domain.value,
            right=b.domain.value,
        )
    if a.domain is Domain.DISK:
        return float(disk_distance_array(a.value, b.value))
    return float(half_plane_distance_array(a.value, b.value))


# rectangles


@dataclass(frozen=True)
class Rectangle:
    x0: float
    x1: float
    y0: float
    y1: float

    def __post_init__(self):
        if not (self.x0 <= self.x1 and self.y0 <= self.y1):
            raise InvalidRegion(
                "Empty rectangle",
                x0=self.x0,
                x1=self.x1,
                y0=self.y0,
                y1=self.y1,
            )

    @property
    def width(self) -> float:
        return self.x1 - self.x0

    @property
    def height(self) -> float:
        return self.y1 - self.y0

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def center(self) -> complex:
        return complex((self.x0 + self.x1) / 2, (self.y0 + self.y1) / 2)

    def contains_array(self, z: np.ndarray, half_open: bool = False) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        x, y = z.real, z.imag
        if half_open:
            return (x >= self.x0) & (x < self.x1) & (y >= self.y0) & (y < self.y1)
        return (x >= self.x0) & (x <= self.x1) & (y >= self.y0) & (y <= self.y1)

    def intersection(self, other: "Rectangle") -> Optional["Rectangle"]:
        x0, x1 = max(self.x0, other.x0), min(self.x1, other.x1)
        y0, y1 = max(self.y0, other.y0), min(self.y1, other.y1)
        if x0 > x1 or y0 > y1:
            return None
        return Rectangle(x0, x1, y0, y1)

    def scaled(self, factor: float) -> "Rectangle":
        return Rectangle(
            self.x0 * factor, self.x1 * factor, self.y0 * factor, self.y1 * factor
        )

    def translated(self, dx: float = 0.0, dy: float = 0.0) -> "Rectangle":
        return Rectangle(self.x0 + dx, self.x1 + dx, self.y0 + dy, self.y1 + dy)

    def quarters(self) -> List["Rectangle"]:
        xm = (self.x0 + self.x1) / 2
        ym = (self.y0 + self.y1) / 2
        return [
            Rectangle(self.x0, xm, self.y0, ym),
            Rectangle(xm, self.x1, self.y0, ym),
            Rectangle(self.x0, xm, ym, self.y1),
            Rectangle(xm, self.x1, ym, self.y1),
        ]

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.x0, self.x1, self.y0, self.y1)


OMEGA = Rectangle(
    constants.OMEGA_X[0], constants.OMEGA_X[1], constants.OMEGA_Y[0], constants.OMEGA_Y[1]
)


# dyadic grid


@dataclass(frozen=True, order=True)
class DyadicIndex:
    n: int
    j: int
    k: int

    def __post_init__(self):
        if self.n < 0:
            raise InvalidIndex("generation must be >= 0", n=self.n)
        side = 1 << self.n
        if not (0 <= self.j < side and 0 <= self.k < side):
            raise InvalidIndex(
                "j and k must lie in [0, 2^n - 1]", n=self.n, j=self.j, k=self.k
            )

    @property
    def side(self) -> float:
        return 2.0 / (1 << self.n)

    @property
    def bounds(self) -> Rectangle:
        side = self.side
        return Rectangle(
            self.j * side, (self.j + 1) * side, self.k * side - 1, (self.k + 1) * side - 1
        )

    @property
    def center(self) -> complex:
        scale = float(1 << self.n)
        return complex((2 * self.j + 1) / scale, (2 * self.k + 1) / scale - 1)

    @property
    def touches_boundary(self) -> bool:
        return self.j == 0

    def children(self) -> List["DyadicIndex"]:
        n, j, k = self.n + 1, 2 * self.j, 2 * self.k
        return [
            DyadicIndex(n, j, k),
            DyadicIndex(n, j + 1, k),
            DyadicIndex(n, j, k + 1),
            DyadicIndex(n, j + 1, k + 1),
        ]

    def parent(self) -> Optional["DyadicIndex"]:
        if self.n == 0:
            return None
        return DyadicIndex(self.n - 1, self.j // 2, self.k // 2)

    def ancestors(self) -> List["DyadicIndex"]:
        result = []
        node = self.parent()
        while node is not None:
            result.append(node)
            node = node.parent()
        return result

    def is_ancestor_of(self, other: "DyadicIndex") -> bool:
        if other.n <= self.n:
            return False
        shift = other.n - self.n
        return (other.j >> shift) == self.j and (other.k >> shift) == self.k

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.n, self.j, self.k)

    @classmethod
    def containing(cls, z: complex, n: int, strict: bool = True) -> "DyadicIndex":
        """
        The generation-n square holding z under the half-open convention.
        With strict=True a point on a dyadic line raises OnDyadicBoundary.
        """
        z = complex(z)
        if not OMEGA.contains_array(z, half_open=True) or z.real <= 0:
            raise InvalidIndex("point is outside Ω", re=z.real, im=z.imag)
        scale = (1 << n) / 2.0
        sx, sy = z.real * scale, (z.imag + 1) * scale
        if strict and (sx == math.floor(sx) or sy == math.floor(sy)):
            raise OnDyadicBoundary(
                "point lies on a generation-{} dyadic line".format(n),
                re=z.real,
                im=z.imag,
            )
        return cls(n, int(math.floor(sx)), int(math.floor(sy)))


def generation(n: int) -> List[DyadicIndex]:
    side = 1 << n
    return [DyadicIndex(n, j, k) for j in range(side) for k in range(side)]


class DyadicSquareInfo(NamedTuple):
    bounds: Rectangle
    center: ComplexPoint
    touches_boundary: bool


def dyadic_square(index: DyadicIndex) -> DyadicSquareInfo:
    return DyadicSquareInfo(
        index.bounds,
        ComplexPoint.of(index.center, Domain.HALF_PLANE),
        index.touches_boundary,
    )


def dyadic_children(index: DyadicIndex) -> List[DyadicIndex]:
    return index.children()


def pseudo_disk_bounding_box(center: Union[ComplexPoint, Complex], r: float) -> Rectangle:
    """
    Axis-aligned box containing Δ(a + ib, r) ⊂ Π⁺. The real range is exact,
    the imaginary half-width a·2r/(1-r)^2 is the bound used for Δ(1, 1/4).
    """
    c = as_complex(center)
    if c.real <= 0:
        raise InvalidPoint("center must lie in the right half-plane", re=c.real)
    if not 0 <= r < 1:
        raise InvalidRegion("radius must lie in [0, 1)", r=r)
    a, b = c.real, c.imag
    half_height = a * 2 * r / (1 - r) ** 2
    return Rectangle(
        a * (1 - r) / (1 + r), a * (1 + r) / (1 - r), b - half_height, b + half_height
    )


class DiskChart(NamedTuple):
    """Maps D(0, r) onto a pseudo-hyperbolic disk, with |F'|^2."""

    forward: Callable[[np.ndarray], np.ndarray]
    jacobian: Callable[[np.ndarray], np.ndarray]


def pseudo_disk_chart(center: complex, domain: Domain) -> DiskChart:
    """
    F = φ_c on D, F = T∘φ_{T(c)} on Π⁺, where φ_a(ζ) = (a - ζ)/(1 - āζ).
    F maps D(0, r) onto the pseudo-hyperbolic disk of radius r about c.
    """
    a = complex(center) if domain is Domain.DISK else (1 - center) / (1 + center)
    scale = 1 - abs(a) ** 2

    def phi(zeta):
        return (a - zeta) / (1 - np.conj(a) * zeta)

    def phi_jacobian(zeta):
        return (scale / np.abs(1 - np.conj(a) * zeta) ** 2) ** 2

    if domain is Domain.DISK:
        return DiskChart(phi, phi_jacobian)

    def forward(zeta):
        return cayley_array(phi(np.asarray(zeta, dtype=complex)))

    def jacobian(zeta):
        zeta = np.asarray(zeta, dtype=complex)
        return np.abs(cayley_derivative_array(phi(zeta))) ** 2 * phi_jacobian(zeta)

    return DiskChart(forward, jacobian)


# regions


class Region(abc.ABC):
    """A subset of D or Π⁺ with exact membership."""

    ambient: Domain

    def contains(self, z: ComplexPoint) -> bool:
        if z.domain not in (self.ambient, Domain.PLANE):
            raise DomainMismatch(
                "{} lives in the {}".format(type(self).__name__, self.ambient.value),
                point=z.domain.value,
            )
        return bool(self.contains_array(np.array([z.value]))[0])

    @abc.abstractmethod
    def contains_array(self, z: np.ndarray) -> np.ndarray:
        pass

    def bounding_box(self) -> Optional[Rectangle]:
        """A rectangle containing the region, None when it is unbounded."""
        return None

    @property
    def bounded(self) -> bool:
        return self.bounding_box() is not None

    def describe(self) -> str:
        return type(self).__name__


def _ambient_filter(z: np.ndarray, ambient: Domain) -> np.ndarray:
    if ambient is Domain.DISK:
        return np.abs(z) < 1
    return z.real > 0


def _unit(xi: Union[ComplexPoint, Complex]) -> complex:
    xi = as_complex(xi)
    if abs(abs(xi) - 1) > constants.CIRCLE_TOLERANCE:
        raise InvalidRegion("ξ must lie on the unit circle", modulus=abs(xi))
    return xi


def _size(h: float, name: str = "h") -> float:
    h = float(h)
    if not 0 < h < 1:
        raise InvalidRegion("{} must lie in (0, 1)".format(name), **{name: h})
    return h


_UNIT_BOX = Rectangle(-1.0, 1.0, -1.0, 1.0)


@dataclass(frozen=True)
class Window(Region):
    """W(ξ, h) = {z ∈ D : |z| ≥ 1 - h and |arg(z ξ̄)| ≤ h}"""

    xi: complex
    h: float
    ambient = Domain.DISK

    def __post_init__(self):
        object.__setattr__(self, "xi", _unit(self.xi))
        object.__setattr__(self, "h", _size(self.h))

    def contains_array(self, z):
        z = np.asarray(z, dtype=complex)
        modulus = np.abs(z)
        return (
            (modulus < 1)
            & (modulus >= 1 - self.h)
            & (np.abs(np.angle(z * np.conj(self.xi))) <= self.h)
        )

    def polar_bounds(self) -> Tuple[float, float, float, float]:
        theta = math.atan2(self.xi.imag, self.xi.real)
        return (1 - self.h, 1.0, theta - self.h, theta + self.h)

    def bounding_box(self):
        return _UNIT_BOX

    def describe(self):
        return "W({:.6g}, {:.6g})".format(self.xi, self.h)


@dataclass(frozen=True)
class SBall(Region):
    """S(ξ, h) = {z ∈ D : |z - ξ| ≤ h}"""

    xi: complex
    h: float
    ambient = Domain.DISK

    def __post_init__(self):
        object.__setattr__(self, "xi", _unit(self.xi))
        object.__setattr__(self, "h", _size(self.h))

    def contains_array(self, z):
        z = np.asarray(z, dtype=complex)
        return (np.abs(z) < 1) & (np.abs(z - self.xi) <= self.h)

    def bounding_box(self):
        box = Rectangle(
            self.xi.real - self.h,
            self.xi.real + self.h,
            self.xi.imag - self.h,
            self.xi.imag + self.h,
        )
        return box.intersection(_UNIT_BOX)


@dataclass(frozen=True)
class PseudoDiskD(Region):
    center: complex
    r: float
    ambient = Domain.DISK

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        if not abs(self.center) < 1:
            raise InvalidRegion("center must lie in D", modulus=abs(self.center))
        object.__setattr__(self, "r", _size(self.r, "r"))

    def contains_array(self, z):
        z = np.asarray(z, dtype=complex)
        return (np.abs(z) < 1) & (disk_distance_array(self.center, z) < self.r)

    def bounding_box(self):
        # Euclidean center and radius of the pseudo-hyperbolic disk
        c, r = self.center, self.r
        denom = 1 - r * r * abs(c) ** 2
        middle = c * (1 - r * r) / denom
        radius = r * (1 - abs(c) ** 2) / denom
        return Rectangle(
            middle.real - radius, middle.real + radius, middle.imag - radius, middle.imag + radius
        )

    def chart(self) -> DiskChart:
        return pseudo_disk_chart(self.center, Domain.DISK)


@dataclass(frozen=True)
class PseudoDiskH(Region):
    center: complex
    r: float
    ambient = Domain.HALF_PLANE

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        if not self.center.real > 0:
            raise InvalidRegion("center must lie in Π⁺", re=self.center.real)
        object.__setattr__(self, "r", _size(self.r, "r"))

    def contains_array(self, z):
        z = np.asarray(z, dtype=complex)
        return (z.real > 0) & (half_plane_distance_array(self.center, z) < self.r)

    def bounding_box(self):
        return pseudo_disk_bounding_box(self.center, self.r)

    def chart(self) -> DiskChart:
        return pseudo_disk_chart(self.center, Domain.HALF_PLANE)


@dataclass(frozen=True)
class DyadicSquare(Region):
    index: DyadicIndex
    ambient = Domain.HALF_PLANE

    def contains_array(self, z):
        z = np.asarray(z, dtype=complex)
        return (z.real > 0) & self.index.bounds.contains_array(z, half_open=True)

    def bounding_box(self):
        return self.index.bounds

    def describe(self):
        return "Q{}".format(self.index.as_tuple())


@dataclass(frozen=True)
class OmegaBox(Region):
    ambient = Domain.HALF_PLANE

    def contains_array(self, z):
        z = np.asarray(z, dtype=complex)
        return (z.real > 0) & (z.real < 2) & (z.imag > -1) & (z.imag < 1)

    def bounding_box(self):
        return OMEGA


@dataclass(frozen=True)
class Annulus(Region):
    """U = {z ∈ D : |z| > e^{-2π}}"""

    ambient = Domain.DISK

    def contains_array(self, z):
        modulus = np.abs(np.asarray(z, dtype=complex))
        return (modulus > constants.ANNULUS_INNER_RADIUS) & (modulus < 1)

    def polar_bounds(self) -> Tuple[float, float, float, float]:
        return (constants.ANNULUS_INNER_RADIUS, 1.0, -math.pi, math.pi)

    def bounding_box(self):
        return _UNIT_BOX


@dataclass(frozen=True)
class Box(Region):
    """Closed axis-aligned rectangle intersected with Π⁺."""

    rect: Rectangle
    ambient = Domain.HALF_PLANE

    def __post_init__(self):
        if self.rect.x1 <= 0:
            raise InvalidRegion("rectangle misses the right half-plane", x1=self.rect.x1)

    def contains_array(self, z):
        z = np.asarray(z, dtype=complex)
        return (z.real > 0) & self.rect.contains_array(z)

    def bounding_box(self):
        return Rectangle(max(self.rect.x0, 0.0), self.rect.x1, self.rect.y0, self.rect.y1)


@dataclass(frozen=True)
class UnitDisk(Region):
    ambient = Domain.DISK

    def contains_array(self, z):
        return np.abs(np.asarray(z, dtype=complex)) < 1

    def polar_bounds(self) -> Tuple[float, float, float, float]:
        return (0.0, 1.0, -math.pi, math.pi)

    def bounding_box(self):
        return _UNIT_BOX


@dataclass(frozen=True)
class RightHalfPlane(Region):
    ambient = Domain.HALF_PLANE

    def contains_array(self, z):
        return np.asarray(z, dtype=complex).real > 0


@dataclass(frozen=True)
class LevelSet(Region):
    """{z : |f(z)| > λ} for an analytic map f (anything with `domain` and
    `evaluate_array`)."""

    holo: object
    lam: float
    within: Optional[Region] = None

    def __post_init__(self):
        if not float(self.lam) > 0:
            raise InvalidRegion("λ must be positive", lam=self.lam)
        if self.within is not None and self.within.ambient != self.holo.domain:
            raise DomainMismatch(
                "level set and enclosing region live in different domains",
                map_domain=self.holo.domain.value,
                region=self.within.ambient.value,
            )

    @property
    def ambient(self) -> Domain:
        return self.holo.domain

    def contains_array(self, z):
        z = np.asarray(z, dtype=complex)
        inside = _ambient_filter(z, self.ambient)
        if self.within is not None:
            inside &= self.within.contains_array(z)
        result = np.zeros(z.shape, dtype=bool)
        if np.any(inside):
            result[inside] = np.abs(self.holo.evaluate_array(z[inside])) > self.lam
        return result

    def bounding_box(self):
        if self.within is not None:
            return self.within.bounding_box()
        return _UNIT_BOX if self.ambient is Domain.DISK else None


@dataclass(frozen=True)
class Intersect(Region):
    regions: Tuple[Region, ...] = field(default_factory=tuple)

    def __post_init__(self):
        regions = tuple(self.regions)
        object.__setattr__(self, "regions", regions)
        if not regions:
            raise InvalidRegion("an intersection needs at least one region")
        ambients = {r.ambient for r in regions}
        if len(ambients) != 1:
            raise DomainMismatch(
                "intersected regions live in different domains",
                domains=sorted(a.value for a in ambients),
            )

    @property
    def ambient(self) -> Domain:
        return self.regions[0].ambient

    def contains_array(self, z):
        z = np.asarray(z, dtype=complex)
        result = np.ones(z.shape, dtype=bool)
        for region in self.regions:
            result &= region.contains_array(z)
        return result

    def bounding_box(self):
        box = None
        for region in self.regions:
            other = region.bounding_box()
            if other is None:
                continue
            box = other if box is None else box.intersection(other)
            if box is None:
                return Rectangle(0.0, 0.0, 0.0, 0.0)
        return box


def intersect(*regions: Region) -> Intersect:
    return Intersect(tuple(regions))


def sample_pairs_in_square(
    index: DyadicIndex, rng: np.random.Generator, count: int
) -> Tuple[np.ndarray, np.ndarray]:
    box = index.bounds
    u = rng.random((4, count))
    z = box.x0 + box.width * u[0] + 1j * (box.y0 + box.height * u[1])
    w = box.x0 + box.width * u[2] + 1j * (box.y0 + box.height * u[3])
    return z, w


def polar_to_complex(r: Sequence[float], theta: Sequence[float]) -> np.ndarray:
    return np.asarray(r) * np.exp(1j * np.asarray(theta))
