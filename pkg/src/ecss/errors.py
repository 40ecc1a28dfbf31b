"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Raised when an input violates a documented precondition or invariant."""


class ScaleGuardError(RuntimeError):
    """Raised when a request exceeds the desk-scale guard of an exhaustive routine."""
