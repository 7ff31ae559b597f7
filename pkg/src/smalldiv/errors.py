"""Shared exception types; the command line maps them to exit codes."""


class SmalldivError(Exception):
    """Base class for library-specific failures."""


class EnclosureTooWide(SmalldivError):
    """An exact enclosure could not be refined enough to decide a comparison."""


class ResonantMultiplier(SmalldivError):
    """A divisor q^k - 1 (or q^(k-1) - 1) vanished during a formal solve."""


class NonContraction(SmalldivError):
    """The fixed-point iteration failed its certified contraction ratio."""


class AnnulusEscape(SmalldivError):
    """An iterate left the annulus where the norms are controlled."""


class BoundaryTooClose(SmalldivError):
    """An evaluation point sits too close to a boundary curve for quadrature."""


class Undecided(SmalldivError):
    """A verification ran out of certified precision without a verdict."""
