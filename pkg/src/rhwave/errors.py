"""Exception types shared across the package."""

from __future__ import annotations


class RHWaveError(Exception):
    """Base class for all errors raised by rhwave."""


class ConfigError(RHWaveError, ValueError):
    """Invalid parameters or configuration; maps to CLI exit code 2."""


class DomainError(RHWaveError, ValueError):
    """Argument outside the region an evaluator supports."""


class PoleError(DomainError):
    """Argument sits on (or numerically next to) a pole.

    ``pole`` carries the offending location, e.g. the non-positive integer
    for Gamma or the integer node for a Pochhammer reciprocal.
    """

    def __init__(self, message: str, pole: complex | int | float | None = None):
        super().__init__(message)
        self.pole = pole


class RefinementError(RHWaveError, RuntimeError):
    """A zero-ordinate seed failed to refine."""

    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index
