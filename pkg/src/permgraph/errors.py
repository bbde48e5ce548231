"""Exception types shared across the package."""


class InvalidWordError(ValueError):
    """Empty input, repeated values, or a sequence that is not a permutation."""


class DomainError(ValueError):
    """Parameters outside the range where an operation or formula applies."""


class ConditionNotMet(ValueError):
    """A constructive operation was asked for a walk that cannot exist."""


class ConstructionError(RuntimeError):
    """Successor construction produced an inconsistent vertex (a caller bug)."""


class GraphSizeError(RuntimeError):
    """The requested graph does not fit the memory budget of the chosen mode."""


class ResourceLimitExceeded(RuntimeError):
    """A search hit its node-expansion limit; ``partial`` holds what was found."""

    def __init__(self, message: str, partial=None, found: int = 0):
        super().__init__(message)
        self.partial = partial
        self.found = found
