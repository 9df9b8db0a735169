"""Exception types shared across the package."""


class InputError(ValueError):
    """An argument is outside the operation's domain."""


class CapacityError(RuntimeError):
    """The requested instance is too large for an exhaustive computation."""


class VerificationError(AssertionError):
    """An internal cross-check disagreed (two routes to the same quantity differ)."""
