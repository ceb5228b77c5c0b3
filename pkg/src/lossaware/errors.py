"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ValidationError(ValueError):
    """One or more parameter invariants are violated.

    All violations are collected in ``messages`` so callers can report them at once.
    """

    def __init__(self, messages):
        if isinstance(messages, str):
            messages = [messages]
        self.messages = list(messages)
        super().__init__("; ".join(self.messages))


class UsageError(TypeError):
    """An operation was called with parameters of the wrong kind."""


class ConvergenceError(ArithmeticError):
    """An iterative solver stopped before reaching its tolerance."""

    def __init__(self, message, last_iterate=float("nan"), residual=float("nan")):
        super().__init__(f"{message} (last iterate {last_iterate!r}, residual {residual!r})")
        self.last_iterate = last_iterate
        self.residual = residual
