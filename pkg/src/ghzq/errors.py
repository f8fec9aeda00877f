"""Exception types shared across the package."""


class GhzqError(Exception):
    """Base class for package errors."""


class InvalidArgumentError(GhzqError, ValueError):
    """Bad dimensions, out-of-range parameters, violated preconditions."""


class ResourceLimitError(GhzqError):
    """A state vector or LHV search space would exceed its configured bound."""


class ConsistencyError(GhzqError):
    """Two independent routes to the same fact disagreed.

    This signals an implementation bug, not a physics result.
    """
