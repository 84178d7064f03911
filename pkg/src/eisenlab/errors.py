"""Exception types shared across the package."""


class EisenlabError(Exception):
    """Base class for all package-specific errors."""


class DomainError(EisenlabError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class PoleError(DomainError):
    """The requested point is a pole of the function being evaluated."""


class TruncationError(EisenlabError, RuntimeError):
    """No truncation point satisfying the requested tolerance was found."""
