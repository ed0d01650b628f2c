"""Exception types shared across the package.

Every operation that enumerates subsets is bounded by an explicit budget.
When the budget runs out we raise rather than silently degrade; where a
partial answer is meaningful (a lower bound found so far) the exception
carries it.
"""


class VcLabError(Exception):
    """Base class for all package errors."""


class ShapeError(VcLabError):
    """Input has the wrong width / dimensions."""


class RangeError(VcLabError):
    """A size or index parameter is out of range."""


class PreconditionError(VcLabError):
    """A documented precondition does not hold for the given input."""


class BudgetExceededError(VcLabError):
    """An exact enumeration would exceed the configured budget.

    ``lower_bound`` holds the best value established before giving up,
    or None when no partial answer exists.
    """

    def __init__(self, message, lower_bound=None):
        super().__init__(message)
        self.lower_bound = lower_bound


class InconclusiveError(VcLabError):
    """A search ran out of budget before either finding a witness or
    certifying absence.  Distinct from a definite 'absent' answer."""
