#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

"""
Random streams and exact samplers.

Every stratum, chunk or experiment cell draws from its own generator keyed by
a stable path below the root seed, e.g. ``streams.generator("profile", 3, 7)``.
Two runs with the same seed see the same numbers whatever the number of
worker threads.
"""

import math
import zlib
from typing import Iterator, List, Tuple, Union

import numpy as np

from carleson_lab.internal.exceptions import ConfigError, InvalidWeight
from carleson_lab.internal.geometry import Rectangle

StreamKey = Union[int, str, float]

_SEED_MASK = (1 << 64) - 1
_WORD = 0xFFFFFFFF


def _key(part: StreamKey) -> List[int]:
    """The 32-bit words a path part contributes to a spawn key."""
    if isinstance(part, bool):
        return [int(part)]
    if isinstance(part, int) and part >= 0:
        if part < _WORD:
            return [part]
        words = []
        while part:
            words.append(part & _WORD)
            part >>= 32
        # marked with its length so it never reads as a run of small parts
        return [_WORD, len(words)] + words
    text = repr(part) if isinstance(part, float) else str(part)
    return [zlib.crc32(text.encode())]


class StreamFactory:
    """Derives independent numpy generators from one root seed."""

    def __init__(self, seed: int):
        if seed < 0 or seed > _SEED_MASK:
            raise ConfigError("seed must be a 64-bit unsigned integer", seed=seed)
        self._seed = int(seed)

    @property
    def seed(self) -> int:
        return self._seed

    def sequence(self, *path: StreamKey) -> np.random.SeedSequence:
        return np.random.SeedSequence(
            self._seed, spawn_key=tuple(w for p in path for w in _key(p))
        )

    def generator(self, *path: StreamKey) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(self.sequence(*path)))

    def child(self, *path: StreamKey) -> "StreamFactory":
        """A factory whose root is the state drawn from `path`."""
        return StreamFactory(int(self.sequence(*path).generate_state(1, np.uint64)[0]))


def chunks(count: int, chunk_size: int) -> Iterator[Tuple[int, int]]:
    """(index, size) pairs covering `count` items."""
    index = 0
    start = 0
    while start < count:
        size = min(chunk_size, count - start)
        yield index, size
        index += 1
        start += size


def check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not alpha > -1 or not math.isfinite(alpha):
        raise InvalidWeight("α must be a finite number > -1", alpha=alpha)
    return alpha


def _angles(rng: np.random.Generator, count: int) -> np.ndarray:
    # uniform on (-π, π]
    return math.pi - 2 * math.pi * rng.random(count)


def bergman_depth_to_u(alpha: float, t: np.ndarray) -> np.ndarray:
    """u = (1 - |z|^2)^{α+1} at depth t = 1 - |z|; A_α is du dθ/2π."""
    t = np.asarray(t, dtype=float)
    return (t * (2 - t)) ** (alpha + 1)


def sample_bergman(alpha: float, count: int, rng: np.random.Generator) -> np.ndarray:
    """
    i.i.d. A_α points: |z|^2 = 1 - (1 - U)^{1/(α+1)}, uniform angle.
    """
    alpha = check_alpha(alpha)
    u = rng.random(count)
    r2 = -np.expm1(np.log1p(-u) / (alpha + 1))
    return np.sqrt(r2) * np.exp(1j * _angles(rng, count))


def sample_bergman_shell(
    alpha: float, u_lo: float, u_hi: float, count: int, rng: np.random.Generator
) -> np.ndarray:
    """
    A_α conditioned on u = (1 - |z|^2)^{α+1} ∈ [u_lo, u_hi]; the shell has
    A_α mass u_hi - u_lo.
    """
    alpha = check_alpha(alpha)
    u = u_lo + (u_hi - u_lo) * rng.random(count)
    r2 = 1 - u ** (1 / (alpha + 1))
    r2 = np.clip(r2, 0.0, np.nextafter(1.0, 0.0))
    return np.sqrt(r2) * np.exp(1j * _angles(rng, count))


def sample_uniform_disk(radius: float, count: int, rng: np.random.Generator) -> np.ndarray:
    return radius * np.sqrt(rng.random(count)) * np.exp(1j * _angles(rng, count))


def power_mass(alpha: float, x0: float, x1: float) -> float:
    """∫_{x0}^{x1} x^α dx for 0 <= x0 <= x1."""
    return (x1 ** (alpha + 1) - x0 ** (alpha + 1)) / (alpha + 1)


def sample_power_box(
    rect: Rectangle, alpha: float, count: int, rng: np.random.Generator
) -> np.ndarray:
    """
    Points of `rect` (x0 >= 0) with density proportional to x^α, the
    normalised μ_α restricted to the rectangle.
    """
    alpha = check_alpha(alpha)
    lo, hi = rect.x0 ** (alpha + 1), rect.x1 ** (alpha + 1)
    x = (lo + (hi - lo) * rng.random(count)) ** (1 / (alpha + 1))
    y = rect.y0 + rect.height * rng.random(count)
    return x + 1j * y


def sample_uniform_box(rect: Rectangle, count: int, rng: np.random.Generator) -> np.ndarray:
    u = rng.random((2, count))
    return rect.x0 + rect.width * u[0] + 1j * (rect.y0 + rect.height * u[1])


def geometric_shells(t_max: float, t_min: float) -> List[Tuple[float, float]]:
    """
    Dyadic depth intervals [t/2, t] from t_max down past t_min, deepest last.
    """
    shells = []
    hi = t_max
    while hi > t_min:
        lo = hi / 2
        shells.append((max(lo, 0.0), hi))
        hi = lo
    shells.append((0.0, hi))
    return shells


def bernoulli_std(hits: int, count: int) -> float:
    if count == 0:
        return 0.0
    p = hits / count
    return math.sqrt(max(p * (1 - p), 0.0) / count)
