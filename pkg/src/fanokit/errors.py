"""Exception hierarchy shared by every module."""


class FanoError(Exception):
    """Base class for all toolkit errors."""


class DomainError(FanoError, ValueError):
    """An argument lies outside the domain of an operation."""


class RangeError(DomainError):
    """Parameters fall below the degree range a construction needs."""


class PreconditionError(DomainError):
    """Input violates a structural precondition (e.g. not vanishing on the span)."""


class UnsupportedError(DomainError):
    """The requested case is deliberately not computed."""


class SearchFailure(FanoError, RuntimeError):
    """Seeded rejection sampling exhausted its attempts without a verified result."""

    def __init__(self, message, attempts, in_range=None):
        super().__init__(message)
        self.attempts = attempts
        self.in_range = in_range


class CrossCheckError(FanoError, RuntimeError):
    """Two independent computations disagree, or a proven divisibility fails.

    Always an implementation bug: the underlying theorem guarantees agreement.
    """
