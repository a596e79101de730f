"""Exception hierarchy shared by all banach_gauge modules.

Every domain error raised by the library derives from BanachGaugeError so
the CLI can map it to exit code 1 with a structured payload.
"""

from __future__ import annotations


class BanachGaugeError(Exception):
    """Base class for all domain errors."""


class SupportTooLarge(BanachGaugeError):
    """Vector support exceeds the cap of an exhaustive norm engine."""


class MalformedCertificate(BanachGaugeError):
    """A norm certificate violates a structural invariant."""


class TooManyVectors(BanachGaugeError):
    """Family size exceeds the exact sign-enumeration cap."""


class ZeroFamily(BanachGaugeError):
    """A ratio is undefined because its denominator vanishes."""


class DegenerateInput(BanachGaugeError):
    """All input vectors are zero."""


class InvalidBound(BanachGaugeError):
    """A constant that must be >= 1 is not."""


class BadEpsilon(BanachGaugeError):
    """Distortion parameter outside (0, 1]."""


class EmbeddingFailed(BanachGaugeError):
    """Random projection failed to meet the distortion target.

    Carries the best attempt seen so callers can inspect how close it came.
    """

    def __init__(self, message, best_map=None, best_report=None):
        super().__init__(message)
        self.best_map = best_map
        self.best_report = best_report


class MTooLarge(BanachGaugeError):
    """Walsh cube exponent m exceeds the enumeration cap."""


class AllPointsCoincide(BanachGaugeError):
    """No distinct pair available for a distortion measurement."""


class RatioUndefined(BanachGaugeError):
    """A pair has source distance 0 but target distance > 0."""


class NegativeEntry(BanachGaugeError):
    """A vector required to be entrywise nonnegative is not."""


class ZeroTail(BanachGaugeError):
    """The tail sum over indices >= 3 vanishes."""


class BadSupportBound(BanachGaugeError):
    """Flat-vector search bound outside the supported range."""


class DomainError(BanachGaugeError):
    """Argument outside a calculator's domain."""
