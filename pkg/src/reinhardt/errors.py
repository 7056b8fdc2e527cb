"""Shared exception types."""


class ContractViolation(ValueError):
    """An operation was called outside its stated preconditions."""


class EvaluationError(RuntimeError):
    """A numeric evaluation produced a non-finite intermediate value."""
