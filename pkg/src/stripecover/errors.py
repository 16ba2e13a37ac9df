"""Exception hierarchy shared by every module."""


class StripeCoverError(Exception):
    pass


class DomainError(StripeCoverError, ValueError):
    """Evaluation outside a declared bounded domain (or at an excluded point)."""


class InvariantError(StripeCoverError, ValueError):
    """A value was constructed that violates its type invariants."""


class PreconditionError(StripeCoverError, ValueError):
    """An operation was called on input it does not accept."""


class ConsistencyError(PreconditionError):
    """An extension constant is smaller than the data's Lipschitz constant."""


class BudgetError(StripeCoverError, ValueError):
    pass


class SchemaError(StripeCoverError, ValueError):
    """Input document does not match its schema; ``field`` names the offender."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
