class MorphicError(Exception):
    """Base class for every error raised by the morphic package."""


class ShapeError(MorphicError, ValueError):
    """Matrix dimensions do not fit the operation."""


class DomainError(MorphicError, ValueError):
    """An argument lies outside the domain of the operation."""


class ParseError(DomainError):
    """A group expression does not follow the grammar."""


class BudgetExceededError(MorphicError):
    """An enumeration would exceed its configured budget."""

    def __init__(self, what: str, count: int, budget: int):
        self.what = what
        self.count = count
        self.budget = budget
        super().__init__(f"{what}: {count} candidates exceed budget {budget}")


class DisagreementError(MorphicError):
    """Two independent computations of the same fact disagree."""
