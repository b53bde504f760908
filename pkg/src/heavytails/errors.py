"""Exception types shared across the package."""


class HeavyTailsError(Exception):
    """Base class for all package-specific errors."""


class DomainError(HeavyTailsError, ValueError):
    """An argument or parameter vector violates its mathematical domain."""


class DataError(HeavyTailsError, ValueError):
    """Input data is malformed, degenerate, or inconsistent."""


class EstimationError(HeavyTailsError, RuntimeError):
    """A maximum-likelihood fit could not produce a usable result."""
