#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

import math

# E(z) = exp(-pi z) maps Omega onto the annulus |z| > ANNULUS_INNER_RADIUS
ANNULUS_INNER_RADIUS = math.exp(-2.0 * math.pi)
E_OF_ONE = math.exp(-math.pi)

# Omega = (0, 2) x (-1, 1)
OMEGA_X = (0.0, 2.0)
OMEGA_Y = (-1.0, 1.0)

CIRCLE_TOLERANCE = 1e-12
HARNACK_TOLERANCE = 1e-9
SCHWARZ_PICK_TOLERANCE = 1e-12

PRECISION_RADIUS = 0.25
NOTOUCH_RADIUS = math.sqrt(0.8)
CENTER_VALUE_BOUND = 16.0 / math.pi
REMARK_SLOPE = -1.0 / 60.0

# shells of the pull-back sampler go this far below the smallest window
SHELL_DEPTH_FACTOR = 16.0
MIN_RELIABLE_HITS = 200
MIN_TREND_HITS = 30
RATIO_SIGMA_GATE = 5.0

DEFAULT_SEED = 20240601
DEFAULT_SAMPLE_COUNT = 10**6
MIN_SAMPLE_COUNT = 10**3
DEFAULT_CHUNK_SIZE = 1 << 18
DEFAULT_MAX_SUBDIVISIONS = 4000
DEFAULT_GAUSS_ORDER = 8

THREADS_ENV_VAR = "CARLESON_LAB_THREADS"
VERSION = "0.1.0"
LOG_PREFIX = "carleson-lab"
REPORT_FLOAT_DIGITS = 17

# defaults shared by every command; command specific overrides follow
CONFIG_DEFAULTS = {
    "alpha": 0.0,
    "symbol": "identity",
    "map": "expquartic",
    "kind": "global",
    "xi_angle": 0.0,
    "h_min": 0.002,
    "h_max": 0.2,
    "h_count": 12,
    "eps_min": 0.05,
    "eps_max": 1.0,
    "eps_count": 6,
    "xi_count": 64,
    "lambda_min": 2.0,
    "lambda_max": 100.0,
    "lambda_count": 8,
    "t_min": 0.05,
    "t_max": 0.5,
    "t_count": 10,
    "orlicz": "power:2",
    "variant": "both",
    "n_max": 12,
    "cz_tol": 1e-6,
    "prune": True,
    "alarm": 50.0,
    "trend_limit": 0.05,
    "c1_factor": 0.9,
    "drop_factor": 10.0,
    "compact_level": 0.05,
    "noncompact_level": 0.2,
    "noise_limit": 0.25,
    "method": "auto",
    "sample_count": DEFAULT_SAMPLE_COUNT,
    "max_subdivisions": DEFAULT_MAX_SUBDIVISIONS,
    "rel_tol": 1e-8,
    "abs_tol": 1e-12,
    "mc_rel_tol": 0.25,
    "seed": DEFAULT_SEED,
    "threads": 1,
    "only": (),
    "out": None,
    "format": "json",
}

COMMAND_DEFAULTS = {
    "scaling": {"h_min": 0.05, "h_max": 0.2, "h_count": 3},
    "tail": {"map": "affine:1,0"},
    "czd": {"map": "affine:0.5 @ expquartic", "lambda_min": 1.5},
    "selftest": {"sample_count": 200000},
}
