"""Exception hierarchy shared across the package."""


class RefmonoidsError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(RefmonoidsError):
    """An operation was requested with an invalid combination of inputs."""


class CapExceededError(RefmonoidsError):
    """A computation grew past the configured scale cap."""


class AmbientMismatchError(UsageError):
    """Two objects live in spaces of different ambient dimension."""


class SingularMatrixError(UsageError):
    """A group element must be invertible but is not."""


class SystemViolationError(UsageError):
    """A subspace family fails the system axioms for the given group."""
