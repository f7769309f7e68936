"""
Error Types

Every failure the library reports is a subclass of `BerryEsseenError`, so the
CLI can map any of them to an exit status with a single `except` clause.
Errors that describe a bad argument also derive from `ValueError`.
"""


class BerryEsseenError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateVariance(BerryEsseenError, ValueError):
    """The sum S has zero (or numerically zero) variance."""


class OracleTooLarge(BerryEsseenError):
    """Exact enumeration would exceed the configured support cap."""

    def __init__(self, size: int, cap: int):
        super().__init__(f"Joint support of {size} outcomes exceeds the enumeration cap {cap}.")
        self.size = size
        self.cap = cap


class MissingMoment(BerryEsseenError, ValueError):
    """A moment required by a bound is not stored in the profile."""


class WrongRegime(BerryEsseenError, ValueError):
    """A parameter lies outside the range where a result applies."""


class NoApplicableBound(BerryEsseenError):
    """No theorem applies to the moments stored in a profile."""


class InvalidProfile(BerryEsseenError, ValueError):
    """A profile or family violates one of its structural invariants."""


class Insufficient(BerryEsseenError, ValueError):
    """Not enough data points to perform the requested computation."""


class QuadratureFailure(BerryEsseenError):
    """Adaptive quadrature did not reach the requested tolerance."""


class ConfigError(BerryEsseenError, ValueError):
    """The configuration file is missing or malformed."""


class ScenarioError(BerryEsseenError, ValueError):
    """A scenario or input document could not be parsed or is inconsistent."""
