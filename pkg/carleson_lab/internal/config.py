#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

"""
Experiment configuration.

Values are merged from, in increasing priority: the global defaults, the
defaults of the command, the config document (``--config PATH``) and the
flags of the command line. Every descriptor (symbol, map, Orlicz function)
is resolved while the configuration is built, so a typo surfaces before any
sampling starts.
"""

import cmath
import dataclasses
import logging
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, List, Mapping, Optional, Tuple

import numpy as np

from carleson_lab.internal import constants
from carleson_lab.internal.exceptions import (
    ConfigError,
    InvalidGrid,
    ParseError,
    UnknownSymbol,
)
from carleson_lab.internal.geometry import Domain
from carleson_lab.internal.helpers import find_approx, log_grid, suggestions_msg
from carleson_lab.internal.measures import IntegrationConfig, Method
from carleson_lab.internal.orlicz import (
    OrliczFunction,
    Variant,
    VerdictThresholds,
    parse_orlicz,
)
from carleson_lab.internal.parser import parse_config_text
from carleson_lab.internal.pullback import TailKind, eps_grid
from carleson_lab.internal.selfmaps import HoloMap, parse_map, parse_symbol
from carleson_lab.internal.typing.builder import build_value

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv")
VARIANTS = ("necessary", "sufficient", "both")

# largest window of each command, windows beyond it are rejected up front
_H_LIMITS = {"scaling": 0.25, "profile": 0.5, "compact": 0.5}


@dataclass(frozen=True)
class ExperimentConfig:
    command: str = "selftest"
    alpha: float = 0.0
    symbol: str = "identity"
    map: str = "expquartic"
    kind: str = "global"
    xi_angle: float = 0.0
    h_min: float = 0.002
    h_max: float = 0.2
    h_count: int = 12
    eps_min: float = 0.05
    eps_max: float = 1.0
    eps_count: int = 6
    xi_count: int = 64
    lambda_min: float = 2.0
    lambda_max: float = 100.0
    lambda_count: int = 8
    t_min: float = 0.05
    t_max: float = 0.5
    t_count: int = 10
    orlicz: str = "power:2"
    variant: str = "both"
    n_max: int = 12
    cz_tol: float = 1e-6
    prune: bool = True
    alarm: float = 50.0
    trend_limit: float = 0.05
    c1_factor: float = 0.9
    drop_factor: float = 10.0
    compact_level: float = 0.05
    noncompact_level: float = 0.2
    noise_limit: float = 0.25
    method: str = "auto"
    sample_count: int = constants.DEFAULT_SAMPLE_COUNT
    max_subdivisions: int = constants.DEFAULT_MAX_SUBDIVISIONS
    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    mc_rel_tol: float = 0.25
    seed: int = constants.DEFAULT_SEED
    threads: int = 1
    only: List[str] = ()
    out: Optional[str] = None
    format: str = "json"

    def __post_init__(self):
        object.__setattr__(self, "only", tuple(self.only))
        self._validate()
        # resolve descriptors eagerly
        for name in ("integration", "holo_symbol", "holo_map", "orlicz_function"):
            getattr(self, name)

    def _validate(self):
        if not self.alpha > -1:
            raise ConfigError("alpha must exceed -1", key="alpha", alpha=self.alpha)
        _choice("kind", self.kind, [k.value for k in TailKind])
        _choice("variant", self.variant, VARIANTS)
        _choice("format", self.format, FORMATS)
        _choice("method", self.method, [m.value for m in Method])
        if self.threads < 1:
            raise ConfigError("threads must be positive", key="threads")
        for name in ("h_count", "eps_count", "lambda_count", "t_count", "xi_count"):
            if getattr(self, name) < 1:
                raise InvalidGrid("{} must be positive".format(name), key=name)
        if not 0 < self.h_min <= self.h_max <= 1:
            raise InvalidGrid(
                "window sizes must satisfy 0 < h_min <= h_max <= 1",
                h_min=self.h_min,
                h_max=self.h_max,
            )
        limit = _H_LIMITS.get(self.command)
        if limit is not None and not self.h_max < limit + 1e-12:
            raise InvalidGrid(
                "{} windows must stay below {}".format(self.command, limit),
                h_max=self.h_max,
            )
        if not 1 < self.lambda_min <= self.lambda_max:
            raise InvalidGrid(
                "λ grid must satisfy 1 < lambda_min <= lambda_max",
                lambda_min=self.lambda_min,
                lambda_max=self.lambda_max,
            )
        if not 0 < self.t_min <= self.t_max <= 0.5:
            raise InvalidGrid(
                "remark grid must lie in (0, 1/2]", t_min=self.t_min, t_max=self.t_max
            )
        if self.n_max < 0 or not self.cz_tol > 0:
            raise ConfigError("n_max must be >= 0 and cz_tol positive", key="n_max")
        eps_grid(self.eps_min, self.eps_max, self.eps_count)

    @property
    def h_grid(self) -> Tuple[float, ...]:
        """Log-spaced window sizes, decreasing."""
        return tuple(float(h) for h in log_grid(self.h_min, self.h_max, self.h_count))

    @property
    def eps(self) -> Tuple[float, ...]:
        return eps_grid(self.eps_min, self.eps_max, self.eps_count)

    @property
    def lambdas(self) -> Tuple[float, ...]:
        """Log-spaced λ values, increasing."""
        grid = log_grid(self.lambda_min, self.lambda_max, self.lambda_count)
        return tuple(float(v) for v in sorted(set(grid)))

    @property
    def t_grid(self) -> Tuple[float, ...]:
        if self.t_count == 1:
            return (float(self.t_max),)
        return tuple(float(t) for t in np.linspace(self.t_min, self.t_max, self.t_count))

    @property
    def xi(self) -> complex:
        return cmath.exp(1j * self.xi_angle)

    @property
    def map_domain(self) -> Domain:
        if self.command == "tail" and self.kind in ("starting", "reduction"):
            return Domain.DISK
        return Domain.HALF_PLANE

    @property
    def variants(self) -> List[Variant]:
        if self.variant == "both":
            return [Variant.NECESSARY, Variant.SUFFICIENT]
        return [Variant(self.variant)]

    @property
    def thresholds(self) -> VerdictThresholds:
        return VerdictThresholds(
            self.drop_factor, self.compact_level, self.noncompact_level, self.noise_limit
        )

    @cached_property
    def integration(self) -> IntegrationConfig:
        return IntegrationConfig(
            method=Method(self.method),
            sample_count=self.sample_count,
            max_subdivisions=self.max_subdivisions,
            rel_tol=self.rel_tol,
            abs_tol=self.abs_tol,
            mc_rel_tol=self.mc_rel_tol,
            seed=self.seed,
            workers=self.threads,
        )

    @cached_property
    def holo_symbol(self) -> HoloMap:
        return _resolve("symbol", self.symbol, parse_symbol)

    @cached_property
    def holo_map(self) -> HoloMap:
        return _resolve("map", self.map, lambda d: parse_map(d, self.map_domain))

    @cached_property
    def orlicz_function(self) -> OrliczFunction:
        return _resolve("orlicz", self.orlicz, parse_orlicz)

    def to_record(self) -> Dict[str, Any]:
        record = {f.name: getattr(self, f.name) for f in dataclasses.fields(self)}
        record["only"] = list(self.only)
        return record

    def replace(self, **changes) -> "ExperimentConfig":
        return dataclasses.replace(self, **changes)


def _choice(key: str, value: str, choices):
    if value not in choices:
        raise ConfigError(
            "invalid {} {!r}{}".format(key, value, suggestions_msg(find_approx(value, choices))),
            key=key,
            choices=list(choices),
        )


def _resolve(key: str, descriptor: str, resolver):
    try:
        return resolver(descriptor)
    except ParseError as e:
        raise ParseError(e.message, line=e.line, key=key) from e
    except UnknownSymbol as e:
        e.details.setdefault("key", key)
        raise


CONFIG_KEYS = {f.name: f for f in dataclasses.fields(ExperimentConfig) if f.name != "command"}


def _field_type(key: str, line: Optional[int] = None):
    field = CONFIG_KEYS.get(key)
    if field is None:
        raise ParseError(
            "unknown config key {!r}{}".format(key, suggestions_msg(find_approx(key, CONFIG_KEYS))),
            line=line,
            key=key,
        )
    return field.type


def _coerce(key: str, value, line: Optional[int] = None):
    tp = _field_type(key, line)
    try:
        return build_value(value, tp)
    except (TypeError, ValueError) as e:
        raise ParseError(
            "cannot read {!r} as {}: {}".format(value, getattr(tp, "__name__", tp), e),
            line=line,
            key=key,
        ) from e


def default_values(command: str) -> Dict[str, Any]:
    values = dict(constants.CONFIG_DEFAULTS)
    threads = os.environ.get(constants.THREADS_ENV_VAR)
    if threads:
        values["threads"] = _coerce("threads", threads)
    values.update(constants.COMMAND_DEFAULTS.get(command, {}))
    return values


def parse_config(
    text: str = "", overrides: Optional[Mapping[str, Any]] = None, command: str = "selftest"
) -> ExperimentConfig:
    """
    Builds the configuration of `command` from a config document and the
    command line overrides. Overrides set to None are ignored.

        parse_config('alpha = 1\\nsymbol = "monomial:2"', {"alpha": 0.0})
    """
    values = default_values(command)
    for line, key, raw in parse_config_text(text or ""):
        values[key] = _coerce(key, raw, line)
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        values[key] = _coerce(key, value)
    logger.debug("configuration of %s: %s", command, values)
    return ExperimentConfig(command=command, **values)


def load_config(
    path: Optional[str], overrides: Optional[Mapping[str, Any]] = None, command: str = "selftest"
) -> ExperimentConfig:
    text = ""
    if path:
        try:
            with open(path, encoding="utf-8") as f:
                text = f.read()
        except OSError as e:
            raise ConfigError("cannot read config file {}: {}".format(path, e), path=path) from e
    return parse_config(text, overrides, command)
