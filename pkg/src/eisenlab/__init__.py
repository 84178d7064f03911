"""eisenlab: high-precision real-analytic Eisenstein series and zeta values."""

from .errors import DomainError, EisenlabError, PoleError, TruncationError

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "EisenlabError",
    "PoleError",
    "TruncationError",
    "__version__",
]
