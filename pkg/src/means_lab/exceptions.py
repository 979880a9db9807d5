"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside an operation's mathematical domain."""


class EvaluationError(ArithmeticError):
    """A numerical evaluation could not produce a meaningful result."""
