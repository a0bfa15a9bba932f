"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """An argument violates an operation's input contract."""


class PreconditionError(ValueError):
    """A mathematical precondition fails for otherwise well-formed input."""


class InternalConsistencyError(RuntimeError):
    """An internal cross-check failed; indicates a bug, not bad input."""


class UnclassifiedSingularityError(ValueError):
    """No singularity profile matches the computed intersection data."""
