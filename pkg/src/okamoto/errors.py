"""Exception types shared across the package."""


class OkamotoError(Exception):
    """Base class for all package-specific errors."""


class DomainError(OkamotoError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class GridPointError(OkamotoError, ValueError):
    """The point is a grid point of the requested level; the slope is undefined there."""


class PrecisionError(OkamotoError, ArithmeticError):
    """A strict comparison is numerically ambiguous; supply exact (rational) inputs."""


class ResourceError(OkamotoError, RuntimeError):
    """The requested computation exceeds a configured size cap."""


class ConvergenceError(OkamotoError, RuntimeError):
    """A bracketing root search failed; indicates a precision misconfiguration."""
