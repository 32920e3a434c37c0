"""Exception types shared across the package."""


class CapExceeded(RuntimeError):
    """A resource limit (group order, matrix size, integer width) was hit."""


class NotInvertible(ValueError):
    """A matrix that must be invertible is singular modulo p."""


class InconsistentCocycle(ValueError):
    """Generator values do not extend to a 1-cocycle."""


class SylowError(RuntimeError):
    """The p-elements of a group failed to close to a single Sylow subgroup."""
