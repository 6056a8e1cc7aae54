#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

"""
Certified analytic maps between D and Π⁺.

Only families whose codomain is backed by an argument can be constructed;
each class states that argument in `certificate`. Maps compose with `@`
(``f @ g`` is f∘g) and are addressable by descriptor strings such as
``blaschke:0.5,0.3+0.1i`` or ``affine:0.5 @ expquartic``.
"""

import abc
import enum
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from carleson_lab.internal import constants, parser
from carleson_lab.internal.exceptions import (
    CertificationError,
    DomainMismatch,
    IncompatibleChain,
    NumericOverflow,
    PreconditionFailed,
    UnknownSymbol,
)
from carleson_lab.internal.geometry import (
    ComplexPoint,
    Domain,
    as_complex,
    cayley_array,
    disk_distance_array,
    exp_map_array,
    half_plane_distance_array,
    in_domain,
    pseudo_disk_chart,
)
from carleson_lab.internal.helpers import find_approx, format_complex, suggestions_msg
from carleson_lab.internal.sampling import StreamFactory, sample_uniform_disk

logger = logging.getLogger(__name__)

_FLIP = {Domain.DISK: Domain.HALF_PLANE, Domain.HALF_PLANE: Domain.DISK}


def _flip(domain: Domain) -> Domain:
    try:
        return _FLIP[domain]
    except KeyError:
        raise IncompatibleChain("only D and Π⁺ are exchanged by T", domain=domain.value)


def _open_domain(domain) -> Domain:
    domain = Domain.parse(domain)
    if domain not in _FLIP:
        raise CertificationError(
            "maps act on the disk or the half-plane", domain=domain.value
        )
    return domain


class HoloMap(abc.ABC):
    domain: Domain
    codomain: Domain
    certificate: str = ""

    @abc.abstractmethod
    def evaluate_array(self, z: np.ndarray) -> np.ndarray:
        pass

    @property
    @abc.abstractmethod
    def descriptor(self) -> str:
        pass

    def evaluate(self, z: ComplexPoint) -> ComplexPoint:
        if z.domain not in (self.domain, Domain.PLANE) or not in_domain(
            z.value, self.domain
        ):
            raise DomainMismatch(
                "{} is defined on the {}".format(self.descriptor, self.domain.value),
                re=z.re,
                im=z.im,
                domain=z.domain.value,
            )
        with np.errstate(over="ignore", invalid="ignore"):
            value = complex(self.evaluate_array(np.array([z.value]))[0])
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise NumericOverflow(
                "{} overflowed at {}".format(self.descriptor, z.value),
                re=z.re,
                im=z.im,
            )
        if not in_domain(value, self.codomain):
            raise CertificationError(
                "{} left its codomain at {}".format(self.descriptor, z.value),
                re=z.re,
                im=z.im,
                image=str(value),
            )
        return ComplexPoint.of(value, self.codomain)

    def __call__(self, z):
        return self.evaluate_array(np.asarray(z, dtype=complex))

    def __matmul__(self, inner: "HoloMap") -> "Composition":
        return Composition((self, inner))

    def __repr__(self):
        return "<{} {}: {} -> {}>".format(
            type(self).__name__,
            self.descriptor,
            self.domain.value,
            self.codomain.value,
        )


def _args(*values) -> str:
    return ",".join(format_complex(v) for v in values)


class Identity(HoloMap):
    certificate = "the identity preserves every domain"

    def __init__(self, domain=Domain.DISK):
        self.domain = self.codomain = _open_domain(domain)

    def evaluate_array(self, z):
        return np.array(z, dtype=complex)

    @property
    def descriptor(self):
        return "identity"


class Constant(HoloMap):
    certificate = "the image is the single point c of the codomain"

    def __init__(self, c, domain=Domain.DISK, codomain: Optional[Domain] = None):
        self.c = complex(c)
        self.domain = _open_domain(domain)
        if codomain is None:
            candidates = [self.domain, _flip(self.domain)]
            codomain = next((d for d in candidates if in_domain(self.c, d)), None)
            if codomain is None:
                raise CertificationError(
                    "constant {} lies neither in D nor in Π⁺".format(self.c)
                )
        self.codomain = _open_domain(codomain)
        if not in_domain(self.c, self.codomain):
            raise CertificationError(
                "constant {} is not a point of the {}".format(
                    self.c, self.codomain.value
                )
            )

    def evaluate_array(self, z):
        return np.full(np.shape(z), self.c, dtype=complex)

    @property
    def descriptor(self):
        return "constant:" + _args(self.c)


def _unimodular(u) -> complex:
    u = complex(u)
    if abs(abs(u) - 1) > 1e-12:
        raise CertificationError("rotation factor must be unimodular", modulus=abs(u))
    return u / abs(u)


class Monomial(HoloMap):
    certificate = "|u z^k| = |z|^k < 1 on D"
    domain = codomain = Domain.DISK

    def __init__(self, k, rotation=1):
        k_value = complex(k)
        if k_value.imag != 0 or k_value.real != int(k_value.real) or k_value.real < 1:
            raise CertificationError("monomial degree must be a positive integer", k=str(k))
        self.k = int(k_value.real)
        self.rotation = _unimodular(rotation)

    def evaluate_array(self, z):
        return self.rotation * np.asarray(z, dtype=complex) ** self.k

    @property
    def descriptor(self):
        if self.rotation == 1:
            return "monomial:{}".format(self.k)
        return "monomial:{},{}".format(self.k, format_complex(self.rotation))


class Blaschke(HoloMap):
    """u ∏ (z - a)/(1 - āz); an automorphism when there is a single zero."""

    certificate = "every factor maps D onto D"
    domain = codomain = Domain.DISK

    def __init__(self, zeros: Sequence[complex], rotation=1):
        self.zeros = tuple(complex(a) for a in zeros)
        if not self.zeros:
            raise CertificationError("a Blaschke product needs at least one zero")
        for a in self.zeros:
            if not abs(a) < 1:
                raise CertificationError("Blaschke zero {} is outside D".format(a))
        self.rotation = _unimodular(rotation)

    def evaluate_array(self, z):
        z = np.asarray(z, dtype=complex)
        result = np.full(z.shape, self.rotation, dtype=complex)
        for a in self.zeros:
            result *= (z - a) / (1 - np.conj(a) * z)
        return result

    @property
    def descriptor(self):
        text = "blaschke:" + _args(*self.zeros)
        if self.rotation != 1:
            # a trailing unimodular argument would read as a zero
            return "monomial:1,{} @ {}".format(format_complex(self.rotation), text)
        return text


class BoundedPolynomial(HoloMap):
    certificate = "|p(z)| <= sum |a_n| |z|^n < 1 on D when sum |a_n| <= 1, |a_0| < 1"
    domain = codomain = Domain.DISK

    def __init__(self, coefficients: Sequence[complex]):
        self.coefficients = tuple(complex(a) for a in coefficients)
        if not self.coefficients:
            raise CertificationError("a polynomial needs coefficients")
        total = sum(abs(a) for a in self.coefficients)
        if total > 1 + 1e-15 or not abs(self.coefficients[0]) < 1:
            raise CertificationError(
                "coefficients must satisfy sum |a_n| <= 1 and |a_0| < 1",
                coefficient_sum=total,
            )

    def evaluate_array(self, z):
        z = np.asarray(z, dtype=complex)
        result = np.zeros(z.shape, dtype=complex)
        for a in reversed(self.coefficients):
            result = result * z + a
        return result

    @property
    def descriptor(self):
        return "polynomial:" + _args(*self.coefficients)


class Lens(HoloMap):
    certificate = "T(z)^s stays in the sector |arg| < sπ/2 of Π⁺"
    domain = codomain = Domain.DISK

    def __init__(self, s):
        s = complex(s)
        if s.imag != 0 or not 0 < s.real < 1:
            raise CertificationError("lens exponent must lie in (0, 1)", s=str(s))
        self.s = s.real

    def evaluate_array(self, z):
        return cayley_array(cayley_array(z) ** self.s)

    @property
    def descriptor(self):
        return "lens:" + _args(self.s)


class Affine(HoloMap):
    certificate = "Re(aw + b) = a Re w + Re b > 0 for a > 0, Re b >= 0"
    domain = codomain = Domain.HALF_PLANE

    def __init__(self, a, b=0):
        a, b = complex(a), complex(b)
        if a.imag != 0 or not a.real > 0 or b.real < 0:
            raise CertificationError(
                "affine maps need a > 0 and Re b >= 0", a=str(a), b=str(b)
            )
        self.a, self.b = a.real, b

    def evaluate_array(self, z):
        return self.a * np.asarray(z, dtype=complex) + self.b

    @property
    def descriptor(self):
        if self.b == 0:
            return "affine:" + _args(self.a)
        return "affine:" + _args(self.a, self.b)


class Reciprocal(HoloMap):
    certificate = "Re(1/w) = Re w/|w|^2 > 0"
    domain = codomain = Domain.HALF_PLANE

    def evaluate_array(self, z):
        return 1 / np.asarray(z, dtype=complex)

    @property
    def descriptor(self):
        return "reciprocal"


class ExpQuartic(HoloMap):
    """f(w) = exp(T(w)^4). |T(w)| < 1 on Π⁺, so |arg f| < 1 < π/2."""

    certificate = "|Im T(w)^4| < 1 < π/2, hence Re exp(T(w)^4) > 0"
    domain = codomain = Domain.HALF_PLANE

    def evaluate_array(self, z):
        return np.exp(cayley_array(z) ** 4)

    @property
    def descriptor(self):
        return "expquartic"


class CayleyMap(HoloMap):
    certificate = "T exchanges D and Π⁺"

    def __init__(self, domain=Domain.DISK):
        self.domain = _open_domain(domain)
        self.codomain = _flip(self.domain)

    def evaluate_array(self, z):
        return cayley_array(z)

    @property
    def descriptor(self):
        return "cayley"


class ExpMap(HoloMap):
    certificate = "|exp(-πw)| = exp(-π Re w) < 1"
    domain = Domain.HALF_PLANE
    codomain = Domain.DISK

    def evaluate_array(self, z):
        return exp_map_array(z)

    @property
    def descriptor(self):
        return "exp"


class Composition(HoloMap):
    """maps[0] ∘ maps[1] ∘ ... ∘ maps[-1]"""

    certificate = "each link maps into the domain of the next"

    def __init__(self, maps: Sequence[HoloMap]):
        flat: List[HoloMap] = []
        for m in maps:
            flat.extend(m.maps if isinstance(m, Composition) else [m])
        if not flat:
            raise IncompatibleChain("empty composition")
        for outer, inner in zip(flat, flat[1:]):
            if inner.codomain is not outer.domain:
                raise IncompatibleChain(
                    "{} maps into the {} but {} is defined on the {}".format(
                        inner.descriptor,
                        inner.codomain.value,
                        outer.descriptor,
                        outer.domain.value,
                    )
                )
        self.maps = tuple(flat)
        self.domain = flat[-1].domain
        self.codomain = flat[0].codomain

    def evaluate_array(self, z):
        value = np.asarray(z, dtype=complex)
        for m in reversed(self.maps):
            value = m.evaluate_array(value)
        return value

    @property
    def descriptor(self):
        return " @ ".join(
            "({})".format(m.descriptor) if isinstance(m, Composition) else m.descriptor
            for m in self.maps
        )


class CayleyConjugate(HoloMap):
    """T∘m∘T"""

    certificate = "T exchanges D and Π⁺ on both sides"

    def __init__(self, inner: HoloMap):
        self.inner = inner
        self.domain = _flip(inner.domain)
        self.codomain = _flip(inner.codomain)

    def evaluate_array(self, z):
        return cayley_array(self.inner.evaluate_array(cayley_array(z)))

    @property
    def descriptor(self):
        return "conj({})".format(self.inner.descriptor)


class Transfer(enum.Enum):
    COMPOSE_WITH_T = "compose-with-t"
    COMPOSE_WITH_E = "compose-with-e"
    CONJUGATE_BY_T = "conjugate-by-t"


def transfer(m: HoloMap, kind: Transfer) -> HoloMap:
    """
    COMPOSE_WITH_T: g ↦ g∘T, from D to Π⁺ domain (f(1) = g(0)).
    COMPOSE_WITH_E: g ↦ g∘E (f(1) = g(e^{-π})).
    CONJUGATE_BY_T: m ↦ T∘m∘T.
    """
    kind = Transfer(kind)
    if kind is Transfer.CONJUGATE_BY_T:
        return CayleyConjugate(m)
    if m.domain is not Domain.DISK:
        raise IncompatibleChain(
            "{} needs a map defined on D".format(kind.value), map=m.descriptor
        )
    if kind is Transfer.COMPOSE_WITH_T:
        return Composition((m, CayleyMap(Domain.HALF_PLANE)))
    return Composition((m, ExpMap()))


# descriptor catalog


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    signature: str
    domains: str
    certificate: str
    example: str


def _build(cls, arity: Tuple[int, int], **fixed):
    def factory(args: Tuple[complex, ...], domain: Domain) -> HoloMap:
        lo, hi = arity
        if not lo <= len(args) <= hi:
            raise CertificationError(
                "expected between {} and {} arguments, got {}".format(lo, hi, len(args))
            )
        return cls(*args, **fixed)

    return factory


def _domain_polymorphic(cls, arity):
    def factory(args, domain):
        if not arity[0] <= len(args) <= arity[1]:
            raise CertificationError(
                "expected between {} and {} arguments".format(*arity)
            )
        return cls(*args, domain=domain)

    return factory


_FACTORIES = {
    "identity": _domain_polymorphic(Identity, (0, 0)),
    "constant": _domain_polymorphic(Constant, (1, 1)),
    "monomial": _build(Monomial, (1, 2)),
    "blaschke": lambda args, domain: Blaschke(args),
    "polynomial": lambda args, domain: BoundedPolynomial(args),
    "lens": _build(Lens, (1, 1)),
    "affine": _build(Affine, (1, 2)),
    "reciprocal": _build(Reciprocal, (0, 0)),
    "expquartic": _build(ExpQuartic, (0, 0)),
    "cayley": _domain_polymorphic(CayleyMap, (0, 0)),
    "exp": _build(ExpMap, (0, 0)),
}

CATALOG = (
    CatalogEntry("identity", "identity", "D→D or Π⁺→Π⁺", Identity.certificate, "identity"),
    CatalogEntry("constant", "constant:c", "any", Constant.certificate, "constant:0.5"),
    CatalogEntry("monomial", "monomial:k[,u]", "D→D", Monomial.certificate, "monomial:2"),
    CatalogEntry("blaschke", "blaschke:a1,...", "D→D", Blaschke.certificate, "blaschke:0.5,0.3+0.1i"),
    CatalogEntry("polynomial", "polynomial:a0,a1,...", "D→D", BoundedPolynomial.certificate, "polynomial:0,0.5,0.5"),
    CatalogEntry("lens", "lens:s", "D→D", Lens.certificate, "lens:0.5"),
    CatalogEntry("affine", "affine:a[,b]", "Π⁺→Π⁺", Affine.certificate, "affine:2,i"),
    CatalogEntry("reciprocal", "reciprocal", "Π⁺→Π⁺", Reciprocal.certificate, "reciprocal"),
    CatalogEntry("expquartic", "expquartic", "Π⁺→Π⁺", ExpQuartic.certificate, "expquartic"),
    CatalogEntry("cayley", "cayley", "D↔Π⁺", CayleyMap.certificate, "affine:0.5 @ cayley"),
    CatalogEntry("exp", "exp", "Π⁺→D", ExpMap.certificate, "conj(affine:2) @ exp"),
)


def _build_terms(terms, domain: Domain) -> HoloMap:
    # the requested domain applies to the right-most term
    maps: List[HoloMap] = []
    current = domain
    for term in reversed(terms):
        if isinstance(term, parser.ConjTerm):
            inner = _build_terms(term.inner, _flip(current))
            built = CayleyConjugate(inner)
        else:
            factory = _FACTORIES.get(term.name)
            if factory is None:
                raise UnknownSymbol(
                    "unknown map {!r}{}".format(
                        term.name, suggestions_msg(find_approx(term.name, _FACTORIES))
                    ),
                    symbol=term.name,
                )
            built = factory(term.args, current)
        maps.append(built)
        current = built.codomain
    maps.reverse()
    result = maps[0] if len(maps) == 1 else Composition(maps)
    if result.domain is not domain:
        raise IncompatibleChain(
            "{} is defined on the {}, not the {}".format(
                result.descriptor, result.domain.value, domain.value
            )
        )
    return result


def parse_map(descriptor: str, domain=Domain.DISK) -> HoloMap:
    """
    Builds a certified map from its descriptor. Certification failures and
    broken chains surface as UnknownSymbol.
    """
    terms = parser.parse_expression(descriptor, key="map")
    try:
        return _build_terms(terms, Domain.parse(domain))
    except (CertificationError, IncompatibleChain) as e:
        raise UnknownSymbol(
            "{!r} does not describe a certified map: {}".format(descriptor, e.message),
            descriptor=descriptor,
        ) from e
    except TypeError as e:
        raise UnknownSymbol(
            "bad arguments in {!r}: {}".format(descriptor, e), descriptor=descriptor
        ) from e


def parse_symbol(descriptor: str) -> HoloMap:
    """A D→D symbol."""
    symbol = parse_map(descriptor, Domain.DISK)
    if symbol.codomain is not Domain.DISK:
        raise UnknownSymbol(
            "{!r} does not map D into D".format(descriptor), descriptor=descriptor
        )
    return symbol


# audits


@dataclass
class AuditSample:
    kind: str
    count: int
    min_value: Optional[float]
    max_value: Optional[float]
    bound_lo: Optional[float]
    bound_hi: Optional[float]
    worst: List[List[float]] = field(default_factory=list)
    extra: Dict[str, Any] = field(default_factory=dict)
    # the lower bound excludes equality
    strict: bool = False

    @property
    def passed(self) -> bool:
        if self.bound_lo is not None and self.min_value is not None:
            if self.min_value < self.bound_lo:
                return False
            if self.strict and self.min_value == self.bound_lo:
                return False
        if self.bound_hi is not None and self.max_value is not None:
            if self.max_value > self.bound_hi:
                return False
        return True

    def to_record(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "count": self.count,
            "min": self.min_value,
            "max": self.max_value,
            "bound_lo": self.bound_lo,
            "bound_hi": self.bound_hi,
            "worst": self.worst,
            "passed": self.passed,
            **self.extra,
        }


def _points(z) -> List[List[float]]:
    return [[float(complex(p).real), float(complex(p).imag)] for p in z]


def _distance(domain: Domain):
    return disk_distance_array if domain is Domain.DISK else half_plane_distance_array


def sample_domain_points(
    domain: Domain, count: int, rng: np.random.Generator, radius: float = 0.9
) -> np.ndarray:
    """Uniform points of D(0, radius), carried to Π⁺ by T when needed."""
    z = sample_uniform_disk(radius, count, rng)
    return z if domain is Domain.DISK else cayley_array(z)


# pairs closer than this are dominated by rounding in the metric formulas
_MIN_PAIR_DISTANCE = 1e-6


def schwarz_pick_audit(m: HoloMap, pair_count: int, seed: int) -> AuditSample:
    """max over random pairs of ρ(m(z), m(w))/ρ(z, w); at most 1 for every map."""
    rng = StreamFactory(seed).generator("schwarz-pick", m.descriptor)
    z = sample_domain_points(m.domain, pair_count, rng)
    w = sample_domain_points(m.domain, pair_count, rng)
    before = _distance(m.domain)(z, w)
    keep = before > _MIN_PAIR_DISTANCE
    z, w, before = z[keep], w[keep], before[keep]
    after = _distance(m.codomain)(m.evaluate_array(z), m.evaluate_array(w))
    ratio = after / before
    worst = int(np.argmax(ratio)) if ratio.size else 0
    return AuditSample(
        "schwarz-pick",
        int(ratio.size),
        float(ratio.min()) if ratio.size else None,
        float(ratio.max()) if ratio.size else None,
        None,
        1 + constants.SCHWARZ_PICK_TOLERANCE,
        _points([z[worst], w[worst]]) if ratio.size else [],
        {"map": m.descriptor},
    )


def harnack_constant(s: float) -> float:
    return (1 + s) / (1 - s)


def harnack_audit(
    f: HoloMap, c, s: float, sample_count: int, seed: int
) -> AuditSample:
    """|f(z)|/|f(c)| over Δ(c, s) lies in [1/M_s, M_s], M_s = (1+s)/(1-s)."""
    if f.codomain is not Domain.HALF_PLANE:
        raise IncompatibleChain("Harnack bounds need a map into Π⁺", map=f.descriptor)
    if not 0 < s < 1:
        raise PreconditionFailed("s must lie in (0, 1)", s=s)
    c = as_complex(c)
    if not in_domain(c, f.domain):
        raise DomainMismatch("center is outside the domain of the map", center=str(c))
    rng = StreamFactory(seed).generator("harnack", f.descriptor, repr(s))
    chart = pseudo_disk_chart(c, f.domain)
    z = chart.forward(sample_uniform_disk(s, sample_count, rng))
    ratio = np.abs(f.evaluate_array(z)) / abs(complex(f.evaluate_array(np.array([c]))[0]))
    bound = harnack_constant(s)
    extreme = int(np.argmax(np.maximum(ratio, 1 / ratio)))
    return AuditSample(
        "harnack",
        int(ratio.size),
        float(ratio.min()),
        float(ratio.max()),
        1 / bound - constants.HARNACK_TOLERANCE,
        bound + constants.HARNACK_TOLERANCE,
        _points([z[extreme]]),
        {"map": f.descriptor, "center": _points([c])[0], "s": s, "M_s": bound},
    )


SHARP_GROWTH_CONSTANT = (1 + constants.E_OF_ONE) / (1 - constants.E_OF_ONE)


@dataclass(frozen=True)
class GrowthAudit:
    ratio: float
    tanh_pi_ratio: float

    @property
    def passed(self) -> bool:
        return self.ratio <= 1 + constants.SCHWARZ_PICK_TOLERANCE

    def to_record(self):
        return {
            "ratio": self.ratio,
            "tanh_pi_ratio": self.tanh_pi_ratio,
            "passed": self.passed,
        }


def growth_bound_audit(g: HoloMap) -> GrowthAudit:
    """
    For g: D → Π⁺, |g(e^{-π})| <= coth(π/2)|g(0)|. `ratio` is measured
    against that sharp constant, `tanh_pi_ratio` against 1/tanh π.
    """
    if g.domain is not Domain.DISK or g.codomain is not Domain.HALF_PLANE:
        raise IncompatibleChain("growth bounds need a map from D to Π⁺", map=g.descriptor)
    values = np.abs(g.evaluate_array(np.array([constants.E_OF_ONE, 0.0])))
    quotient = float(values[0] / values[1])
    return GrowthAudit(quotient / SHARP_GROWTH_CONSTANT, quotient * math.tanh(math.pi))


def schwarz_step_audit(g: HoloMap, beta: float, count: int, seed: int) -> AuditSample:
    """|g(0)| <= (1-β)/(1+β) forces |z| > β wherever |g(z)| > 1."""
    if g.domain is not Domain.DISK or g.codomain is not Domain.HALF_PLANE:
        raise IncompatibleChain("the Schwarz step needs a map from D to Π⁺", map=g.descriptor)
    if not 0 < beta < 1:
        raise PreconditionFailed("β must lie in (0, 1)", beta=beta)
    threshold = (1 - beta) / (1 + beta)
    at_zero = abs(complex(g.evaluate_array(np.array([0.0]))[0]))
    if at_zero > threshold:
        raise PreconditionFailed(
            "|g(0)| exceeds (1-β)/(1+β)", g0=at_zero, threshold=threshold
        )
    rng = StreamFactory(seed).generator("schwarz-step", g.descriptor, repr(beta))
    z = sample_uniform_disk(1.0, count, rng)
    hits = z[np.abs(g.evaluate_array(z)) > 1]
    closest = int(np.argmin(np.abs(hits))) if hits.size else None
    return AuditSample(
        "schwarz-step",
        int(hits.size),
        float(np.abs(hits).min()) if hits.size else None,
        None,
        beta,
        None,
        _points([hits[closest]]) if hits.size else [],
        {"map": g.descriptor, "beta": beta, "g0": at_zero},
        strict=True,
    )


def codomain_audit(m: HoloMap, count: int, seed: int) -> AuditSample:
    """Fraction of random evaluations landing strictly inside the codomain."""
    rng = StreamFactory(seed).generator("codomain", m.descriptor)
    z = sample_domain_points(m.domain, count, rng, radius=0.999)
    values = m.evaluate_array(z)
    if m.codomain is Domain.DISK:
        inside = np.abs(values) < 1
    else:
        inside = values.real > 0
    inside &= np.isfinite(values)
    outside = np.flatnonzero(~inside)
    fraction = float(inside.mean())
    return AuditSample(
        "codomain",
        int(values.size),
        fraction,
        fraction,
        1.0,
        None,
        _points(z[outside[:3]]),
        {"map": m.descriptor},
    )
