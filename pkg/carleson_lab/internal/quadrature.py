#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

"""
Tensor Gauss-Legendre quadrature on rectangles with adaptive quad-tree
refinement.

Integrands are vectorised callables `f(x, y) -> ndarray` taking two real
arrays of the same shape. A cell's error estimate is the difference between
its own Gauss value and the sum over its four children; the cell with the
largest estimate is split until the summed estimate meets the tolerance.
"""

import functools
import heapq
import itertools
import logging
from typing import Callable, List, NamedTuple, Sequence, Tuple

import numpy as np

from carleson_lab.internal.constants import (
    DEFAULT_GAUSS_ORDER,
    DEFAULT_MAX_SUBDIVISIONS,
)
from carleson_lab.internal.exceptions import NonConvergence, QuadratureFailure
from carleson_lab.internal.geometry import Rectangle

logger = logging.getLogger(__name__)

Integrand = Callable[[np.ndarray, np.ndarray], np.ndarray]


class QuadratureResult(NamedTuple):
    value: float
    error: float
    evaluations: int
    cells: int


@functools.lru_cache(maxsize=32)
def gauss_rule(order: int) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _as_array(rects: Sequence) -> np.ndarray:
    if isinstance(rects, np.ndarray):
        return rects.reshape(-1, 4).astype(float)
    return np.array(
        [r.as_tuple() if isinstance(r, Rectangle) else tuple(r) for r in rects],
        dtype=float,
    ).reshape(-1, 4)


def tensor_gauss(f: Integrand, rects, order: int = DEFAULT_GAUSS_ORDER) -> np.ndarray:
    """
    Gauss-Legendre values of f over every rectangle (x0, x1, y0, y1) of `rects`,
    evaluated in a single vectorised call.
    """
    boxes = _as_array(rects)
    nodes, weights = gauss_rule(order)
    x0, x1, y0, y1 = (boxes[:, i][:, None, None] for i in range(4))
    hx, hy = (x1 - x0) / 2, (y1 - y0) / 2
    x = (x0 + x1) / 2 + hx * nodes[None, :, None]
    y = (y0 + y1) / 2 + hy * nodes[None, None, :]
    x, y = np.broadcast_arrays(x, y)
    values = np.asarray(f(x, y), dtype=float)
    if not np.all(np.isfinite(values)):
        raise QuadratureFailure(
            "integrand is not finite on the quadrature nodes",
            cells=int(boxes.shape[0]),
        )
    w = weights[:, None] * weights[None, :]
    return (values * w[None, :, :]).sum(axis=(1, 2)) * (hx * hy)[:, 0, 0]


def quarter_array(boxes: np.ndarray) -> np.ndarray:
    """Splits each (x0, x1, y0, y1) row into its four quarters, in order."""
    boxes = _as_array(boxes)
    x0, x1, y0, y1 = boxes.T
    xm, ym = (x0 + x1) / 2, (y0 + y1) / 2
    out = np.stack(
        [
            np.stack([x0, xm, y0, ym], axis=1),
            np.stack([xm, x1, y0, ym], axis=1),
            np.stack([x0, xm, ym, y1], axis=1),
            np.stack([xm, x1, ym, y1], axis=1),
        ],
        axis=1,
    )
    return out.reshape(-1, 4)


def integrate_rectangle(
    f: Integrand,
    rect: Rectangle,
    rel_tol: float = 1e-8,
    abs_tol: float = 1e-12,
    max_subdivisions: int = DEFAULT_MAX_SUBDIVISIONS,
    order: int = DEFAULT_GAUSS_ORDER,
) -> QuadratureResult:
    """
    Adaptive integral of f over `rect`. Raises NonConvergence when the budget
    of cell splits runs out before the tolerance is met.
    """
    counter = itertools.count()
    root = _as_array([rect])
    coarse = tensor_gauss(f, root, order)
    children = quarter_array(root)
    child_values = tensor_gauss(f, children, order)
    evaluations = 5 * order * order

    # heap entries: (-error, tiebreak, box, child boxes, child values)
    fine = float(child_values.sum())
    error = abs(fine - float(coarse[0]))
    heap: List = [(-error, next(counter), children, child_values)]
    total, total_error = fine, error
    splits = 0

    while total_error > max(abs_tol, rel_tol * abs(total)):
        if splits >= max_subdivisions:
            raise NonConvergence(
                "adaptive quadrature did not converge",
                value=total,
                error=total_error,
                splits=splits,
            )
        neg_error, _, boxes, values = heapq.heappop(heap)
        total -= float(values.sum())
        total_error += neg_error
        grandchildren = quarter_array(boxes)
        grand_values = tensor_gauss(f, grandchildren, order).reshape(4, 4)
        evaluations += 16 * order * order
        for i in range(4):
            child_fine = float(grand_values[i].sum())
            child_error = abs(child_fine - float(values[i]))
            total += child_fine
            total_error += child_error
            heapq.heappush(
                heap,
                (
                    -child_error,
                    next(counter),
                    grandchildren[4 * i : 4 * i + 4],
                    grand_values[i],
                ),
            )
        splits += 1

    # re-sum to shed the drift of the running totals
    total = float(sum(entry[3].sum() for entry in heap))
    total_error = float(sum(-entry[0] for entry in heap))
    logger.debug(
        "quadrature over %s: %.17g +- %.3g (%d splits)",
        rect.as_tuple(),
        total,
        total_error,
        splits,
    )
    return QuadratureResult(total, total_error, evaluations, len(heap))
