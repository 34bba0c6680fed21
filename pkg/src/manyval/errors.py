"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed input: out-of-range index, unknown name, bad query."""


class ParseError(InputError):
    """Syntax error in a formula, matrix or query string.

    Carries the 0-based offset of the offending character in ``position``.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnsupportedConnectiveError(InputError):
    """A formula uses a connective outside the algebra's signature."""


class BudgetExceededError(RuntimeError):
    """The enumeration would exceed the configured step budget.

    Raised before any partial scan is reported as a verdict: a budget
    overrun is an explicit error, never a silently truncated answer.
    """

    def __init__(self, needed: int, budget: int):
        super().__init__(
            f"enumeration needs {needed} steps, budget is {budget}")
        self.needed = needed
        self.budget = budget


class UnknownLogicError(InputError):
    """A logic selector names no known logic."""
