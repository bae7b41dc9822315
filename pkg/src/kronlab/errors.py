class ContractError(ValueError):
    """Raised when an argument violates an operation's precondition."""


class BudgetExceeded(RuntimeError):
    """Raised when a search would enumerate more items than allowed."""

    def __init__(self, count: int, budget: int, what: str = "partitions"):
        self.count = count
        self.budget = budget
        super().__init__(f"refusing to enumerate {count} {what} (budget {budget})")


class InvariantError(AssertionError):
    """An internal consistency check failed; indicates a bug, not bad input."""
