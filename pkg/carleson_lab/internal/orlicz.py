#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

"""
Orlicz functions Ψ and the compactness indicators of composition operators
on weighted Bergman-Orlicz spaces, read off a Carleson profile:

    necessary   Ψ^{-1}(1/h^{α+2}) / Ψ^{-1}(1/ρ(h))
    sufficient  Ψ^{-1}(1/h^{α+2}) / Ψ^{-1}(1/(h^{α+2} K(h)))

Both tend to 0 exactly when the operator is compact. A finite grid can only
indicate the limit; the verdict thresholds are configuration.
"""

import abc
import enum
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
from scipy import optimize

from carleson_lab.internal import parser
from carleson_lab.internal.exceptions import (
    CertificationError,
    InvalidProfile,
    NegativeInput,
    ProfileTooNoisy,
    UnknownSymbol,
)
from carleson_lab.internal.helpers import find_approx, loglog_slope, suggestions_msg
from carleson_lab.internal.pullback import CarlesonProfile
from carleson_lab.internal.sampling import StreamFactory
from carleson_lab.internal.selfmaps import AuditSample


class OrliczFunction(abc.ABC):
    @abc.abstractmethod
    def forward_array(self, x: np.ndarray) -> np.ndarray:
        pass

    @property
    @abc.abstractmethod
    def descriptor(self) -> str:
        pass

    def inverse(self, y: float) -> float:
        return _bracketed_inverse(self, y)

    def __call__(self, x):
        with np.errstate(over="ignore"):
            return self.forward_array(np.asarray(x, dtype=float))

    def __repr__(self):
        return "<{} {}>".format(type(self).__name__, self.descriptor)


def _real(value, name: str) -> float:
    value = complex(value)
    if value.imag != 0:
        raise CertificationError("{} must be real".format(name), value=str(value))
    return value.real


class Power(OrliczFunction):
    """Ψ(x) = x^p, p > 1"""

    def __init__(self, p):
        self.p = _real(p, "p")
        if not self.p > 1:
            raise CertificationError("power Orlicz functions need p > 1", p=self.p)

    def forward_array(self, x):
        return x**self.p

    def inverse(self, y):
        return y ** (1 / self.p)

    @property
    def descriptor(self):
        return "power:{:g}".format(self.p)


class ExpPower(OrliczFunction):
    """Ψ(x) = e^{x^q} - 1, q >= 1"""

    def __init__(self, q):
        self.q = _real(q, "q")
        if not self.q >= 1:
            raise CertificationError("exponential Orlicz functions need q >= 1", q=self.q)

    def forward_array(self, x):
        return np.expm1(x**self.q)

    def inverse(self, y):
        return math.log1p(y) ** (1 / self.q)

    @property
    def descriptor(self):
        return "exppower:{:g}".format(self.q)


class PowerLog(OrliczFunction):
    """Ψ(x) = x^p log(e - 1 + x)^a, p > 1, a >= 0"""

    def __init__(self, p, a=0):
        self.p = _real(p, "p")
        self.a = _real(a, "a")
        if not self.p > 1 or not self.a >= 0:
            raise CertificationError(
                "power-log Orlicz functions need p > 1 and a >= 0", p=self.p, a=self.a
            )

    def forward_array(self, x):
        return x**self.p * np.log(math.e - 1 + x) ** self.a

    @property
    def descriptor(self):
        return "powerlog:{:g},{:g}".format(self.p, self.a)


def _bracketed_inverse(psi: OrliczFunction, y: float) -> float:
    """Ψ^{-1}(y) by Brent's method on a dyadic bracket [x/2, x]."""
    if y == 0:
        return 0.0
    hi = 1.0
    while float(psi(hi)) < y:
        hi *= 2
    while hi > 1e-300 and float(psi(hi / 2)) >= y:
        hi /= 2
    return optimize.brentq(lambda x: float(psi(x)) - y, hi / 2, hi, xtol=hi * 1e-15)


class Direction(enum.Enum):
    FORWARD = "forward"
    INVERSE = "inverse"


def psi(function: OrliczFunction, x: float, direction=Direction.FORWARD) -> float:
    """Ψ(x) or Ψ^{-1}(x); Ψ^{-1}(∞) = ∞."""
    direction = Direction(direction)
    x = float(x)
    if x < 0 or math.isnan(x):
        raise NegativeInput("Orlicz functions act on [0, ∞)", x=x)
    if math.isinf(x):
        return math.inf
    if direction is Direction.FORWARD:
        return float(function(x))
    return float(function.inverse(x))


_ORLICZ = {
    "power": (Power, 1, 1),
    "exppower": (ExpPower, 1, 1),
    "powerlog": (PowerLog, 1, 2),
}

ORLICZ_CATALOG = (
    ("power", "power:p", "x^p, p > 1", "power:2"),
    ("exppower", "exppower:q", "e^{x^q} - 1, q >= 1", "exppower:1"),
    ("powerlog", "powerlog:p[,a]", "x^p log(e - 1 + x)^a, p > 1, a >= 0", "powerlog:2,1"),
)


def parse_orlicz(descriptor: str) -> OrliczFunction:
    term = parser.parse_term(descriptor, key="orlicz")
    entry = _ORLICZ.get(term.name)
    if entry is None:
        raise UnknownSymbol(
            "unknown Orlicz function {!r}{}".format(
                term.name, suggestions_msg(find_approx(term.name, _ORLICZ))
            ),
            symbol=term.name,
        )
    cls, lo, hi = entry
    if not lo <= len(term.args) <= hi:
        raise UnknownSymbol(
            "{} takes between {} and {} arguments".format(term.name, lo, hi),
            descriptor=descriptor,
        )
    try:
        return cls(*term.args)
    except CertificationError as e:
        raise UnknownSymbol(
            "{!r} is not an Orlicz function: {}".format(descriptor, e.message),
            descriptor=descriptor,
        ) from e


# indicators and verdicts


class Variant(enum.Enum):
    NECESSARY = "necessary"
    SUFFICIENT = "sufficient"


class Verdict(enum.Enum):
    COMPACT = "compact-indicated"
    NOT_COMPACT = "not-compact-indicated"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class VerdictThresholds:
    drop_factor: float = 10.0
    compact_level: float = 0.05
    noncompact_level: float = 0.2
    noise_limit: float = 0.25

    def to_record(self) -> Dict[str, float]:
        return {
            "drop_factor": self.drop_factor,
            "compact_level": self.compact_level,
            "noncompact_level": self.noncompact_level,
            "noise_limit": self.noise_limit,
        }


@dataclass
class CompactnessVerdict:
    variant: Variant
    orlicz: str
    alpha: float
    h: List[float]
    indicator: List[float]
    trend_slope: Optional[float]
    verdict: Verdict
    reason: str
    thresholds: VerdictThresholds = field(default_factory=VerdictThresholds)

    def rows(self) -> List[Dict[str, Any]]:
        return [
            {"variant": self.variant.value, "h": h, "indicator": v}
            for h, v in zip(self.h, self.indicator)
        ]

    def to_record(self) -> Dict[str, Any]:
        return {
            "variant": self.variant.value,
            "orlicz": self.orlicz,
            "alpha": self.alpha,
            "verdict": self.verdict.value,
            "reason": self.reason,
            "trend_slope": self.trend_slope,
            "thresholds": self.thresholds.to_record(),
            "rows": self.rows(),
        }


def indicator_values(
    function: OrliczFunction, alpha: float, profile: CarlesonProfile, variant
) -> List[float]:
    variant = Variant(variant)
    values = []
    for h, rho, k in zip(profile.h, profile.rho, profile.k):
        scale = h ** (alpha + 2)
        denominator = rho if variant is Variant.NECESSARY else scale * k
        if denominator <= 0:
            # Ψ^{-1}(∞) = ∞
            values.append(0.0)
            continue
        values.append(psi(function, 1 / scale, Direction.INVERSE) / psi(
            function, 1 / denominator, Direction.INVERSE
        ))
    return values


def noisy_end(profile: CarlesonProfile, limit: float) -> bool:
    """Relative error of ρ at the smallest h above `limit`."""
    rho, error = profile.rho[-1], profile.rho_error[-1]
    return rho > 0 and error / rho > limit


def compactness_indicator(
    function: OrliczFunction,
    alpha: float,
    profile: CarlesonProfile,
    variant=Variant.NECESSARY,
    thresholds: VerdictThresholds = VerdictThresholds(),
    strict: bool = False,
) -> CompactnessVerdict:
    """
    The indicator sequence over the profile's h grid and its verdict:

      compact-indicated      first >= drop_factor * last and last < compact_level
      not-compact-indicated  the indicator stays >= noncompact_level over the
                             last decade of h
      inconclusive           otherwise, or when ρ is too noisy at the small-h
                             end (ProfileTooNoisy instead when `strict`)
    """
    variant = Variant(variant)
    if profile.alpha != alpha:
        raise InvalidProfile(
            "profile was computed for another α", profile=profile.alpha, alpha=alpha
        )
    h = list(profile.h)
    if h[0] / h[-1] < 100 * (1 - 1e-9):
        raise InvalidProfile("the h grid must span at least two decades", h_max=h[0], h_min=h[-1])
    values = indicator_values(function, alpha, profile, variant)
    slope = loglog_slope(h, values)
    last_decade = [v for t, v in zip(h, values) if t <= 10 * h[-1] * (1 + 1e-9)]

    if noisy_end(profile, thresholds.noise_limit):
        if strict:
            raise ProfileTooNoisy(
                "ρ error bars too large at the smallest h",
                rho=profile.rho[-1],
                error=profile.rho_error[-1],
            )
        verdict, reason = Verdict.INCONCLUSIVE, "profile too noisy at the smallest h"
    elif values[-1] < thresholds.compact_level and values[0] >= thresholds.drop_factor * values[-1]:
        verdict, reason = Verdict.COMPACT, "indicator dropped below {:g}".format(
            thresholds.compact_level
        )
    elif min(last_decade) >= thresholds.noncompact_level:
        verdict, reason = Verdict.NOT_COMPACT, "indicator stays above {:g}".format(
            thresholds.noncompact_level
        )
    else:
        verdict, reason = Verdict.INCONCLUSIVE, "no trend decided on this grid"
    return CompactnessVerdict(
        variant, function.descriptor, alpha, h, values, slope, verdict, reason, thresholds
    )


@dataclass
class VariantComparison:
    necessary: CompactnessVerdict
    sufficient: CompactnessVerdict

    @property
    def ordered(self) -> bool:
        """necessary <= sufficient at every h, since K(h) >= ρ(h)/h^{α+2}."""
        return all(
            n <= s * (1 + 1e-12) + 1e-300
            for n, s in zip(self.necessary.indicator, self.sufficient.indicator)
        )

    @property
    def consistent(self) -> bool:
        return self.necessary.verdict is self.sufficient.verdict

    def to_record(self) -> Dict[str, Any]:
        return {
            "necessary": self.necessary.to_record(),
            "sufficient": self.sufficient.to_record(),
            "ordered": self.ordered,
            "consistent": self.consistent,
        }


def compare_variants(
    function: OrliczFunction,
    alpha: float,
    profile: CarlesonProfile,
    thresholds: VerdictThresholds = VerdictThresholds(),
) -> VariantComparison:
    return VariantComparison(
        compactness_indicator(function, alpha, profile, Variant.NECESSARY, thresholds),
        compactness_indicator(function, alpha, profile, Variant.SUFFICIENT, thresholds),
    )


# audits


def convexity_audit(
    function: OrliczFunction, count: int = 1000, seed: int = 0, x_max: float = 10.0
) -> AuditSample:
    """
    tΨ(a) + (1-t)Ψ(b) - Ψ(ta + (1-t)b) on random triples, relative to the
    right-hand side; never negative beyond rounding for a convex Ψ.
    """
    rng = StreamFactory(seed).generator("convexity", function.descriptor)
    a, b, t = x_max * rng.random(count), x_max * rng.random(count), rng.random(count)
    chord = t * function(a) + (1 - t) * function(b)
    keep = np.isfinite(chord)
    a, b, t, chord = a[keep], b[keep], t[keep], chord[keep]
    gap = (chord - function(t * a + (1 - t) * b)) / np.maximum(chord, 1.0)
    worst = int(np.argmin(gap))
    return AuditSample(
        "convexity",
        int(gap.size),
        float(gap.min()),
        float(gap.max()),
        -1e-12,
        None,
        [[float(a[worst]), float(b[worst]), float(t[worst])]],
        {"orlicz": function.descriptor},
    )


def growth_audit(
    function: OrliczFunction, x_min: float = 1.0, x_max: float = 1e6, count: int = 25
) -> AuditSample:
    """Ψ(0) = 0 and Ψ(x)/x strictly increasing along a geometric grid."""
    x = np.geomspace(x_min, x_max, count)
    with np.errstate(over="ignore"):
        ratio = function(x) / x
    finite = np.isfinite(ratio)
    quotients = ratio[finite][1:] / ratio[finite][:-1]
    at_zero = float(function(0.0))
    return AuditSample(
        "growth",
        int(quotients.size),
        float(quotients.min()) if quotients.size else None,
        float(quotients.max()) if quotients.size else None,
        1.0 + 1e-15,
        None,
        [],
        {"orlicz": function.descriptor, "psi_at_zero": at_zero, "zero_ok": at_zero == 0},
    )
