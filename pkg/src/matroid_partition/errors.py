"""Exception hierarchy shared by every module."""


class MatroidError(Exception):
    """Base class for all errors raised by this package."""


class InputError(MatroidError, ValueError):
    """Malformed input: unknown elements, clashing identifiers, bad JSON fields."""


class FeasibilityError(InputError):
    """A feasible-family candidate violates one of its structural conditions."""

    def __init__(self, condition: str, index=None, detail: str = ""):
        self.condition = condition
        self.index = index
        where = "" if index is None else f" (member {index})"
        msg = f"{condition}{where}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class PreconditionError(MatroidError, ValueError):
    """An operation was called outside its documented domain."""


class ConsistencyError(MatroidError, RuntimeError):
    """A certificate or invariant failed re-verification. Always a bug."""


class BudgetExceeded(MatroidError):
    """Exhaustive enumeration refused an instance larger than its budget."""
