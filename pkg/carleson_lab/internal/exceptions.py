#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

"""
Error hierarchy of carleson-lab.

Every error raised by the library derives from `CarlesonLabError` and knows
how to render itself as a structured record (`to_record`). The CLI prints that
record on stderr and exits with status 1.
"""

from typing import Any, Dict, Optional


class CarlesonLabError(Exception):
    def __init__(self, message: str = "", **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_record(self) -> Dict[str, Any]:
        record = {"error": type(self).__name__, "message": self.message}
        for key, value in self.details.items():
            record[key] = value if _is_plain(value) else str(value)
        return record


def _is_plain(value) -> bool:
    if isinstance(value, (list, tuple)):
        return all(_is_plain(v) for v in value)
    return value is None or isinstance(value, (str, int, float, bool))


# geometry


class DomainError(CarlesonLabError):
    pass


class InvalidPoint(DomainError):
    pass


class InvalidRegion(DomainError):
    pass


class DomainMismatch(DomainError):
    pass


class PoleAtMinusOne(DomainError):
    pass


class OutsideAnnulus(DomainError):
    pass


class OnBranchSlit(DomainError):
    pass


class InvalidIndex(DomainError):
    pass


# measures and integration


class InvalidWeight(CarlesonLabError):
    pass


class SingularPoint(CarlesonLabError):
    pass


class NonConvergence(CarlesonLabError):
    pass


class QuadratureFailure(NonConvergence):
    pass


class UnboundedRegionWithInfiniteMass(CarlesonLabError):
    pass


class SingularRatio(CarlesonLabError):
    pass


# analytic maps


class CertificationError(CarlesonLabError):
    pass


class IncompatibleChain(CarlesonLabError):
    pass


class NumericOverflow(CarlesonLabError):
    pass


# experiments and audits


class InsufficientMass(CarlesonLabError):
    pass


class DegenerateRHS(CarlesonLabError):
    pass


class PreconditionFailed(CarlesonLabError):
    pass


class RootAverageExceedsOne(PreconditionFailed):
    pass


class OnDyadicBoundary(CarlesonLabError):
    pass


# Orlicz functions


class NegativeInput(CarlesonLabError):
    pass


class InvalidProfile(CarlesonLabError):
    pass


class ProfileTooNoisy(InvalidProfile):
    pass


# configuration


class ConfigError(CarlesonLabError):
    pass


class ParseError(ConfigError):
    def __init__(
        self, message: str, line: Optional[int] = None, key: Optional[str] = None
    ):
        super().__init__(message, line=line, key=key)
        self.line = line
        self.key = key


class UnknownSymbol(ConfigError):
    pass


class InvalidGrid(ConfigError):
    pass


# command line


class CommandError(CarlesonLabError):
    pass


class UnknownCommand(CommandError):
    pass


class ArgsValidationError(CommandError):
    pass
