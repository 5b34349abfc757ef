"""Exception hierarchy shared by all modules.

Validation failures derive from :class:`ValueError`, numerical failures from
:class:`RuntimeError`, so callers that only care about the broad category can
catch the builtin base.
"""


class InvSqError(Exception):
    """Base class for every error raised by this package."""


class DomainError(InvSqError, ValueError):
    """An argument lies outside the domain of the operation."""


class SingularInputError(DomainError):
    """The input sits exactly on a singular point (omega = 0 or 1/omega = 0)."""


class UnsupportedBranchError(DomainError):
    """The requested root exists but is not real (e.g. beta0 for 0 < omega < 1)."""


class LevelRangeError(DomainError, OverflowError):
    """A bound-state level is not representable in double precision."""

    def __init__(self, message: str, max_level: int | None = None):
        super().__init__(message)
        self.max_level = max_level


class NumericalError(InvSqError, RuntimeError):
    """A quadrature, integrator or root solver failed to converge."""


class BracketError(NumericalError):
    """A root bracket does not contain a sign change."""

    def __init__(self, message: str, endpoints=None, values=None):
        super().__init__(message)
        self.endpoints = endpoints
        self.values = values


class ResolutionError(NumericalError):
    """A sampled trace is too coarse to attribute jumps unambiguously."""

    def __init__(self, message: str, interval=None):
        super().__init__(message)
        self.interval = interval
