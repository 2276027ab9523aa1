"""Exceptions shared across the engine modules."""


class BudgetExceededError(Exception):
    """A configured resource ceiling (rule applications, evaluations,
    enumeration size) was hit before the operation could finish."""


class InternalCheckError(Exception):
    """A self-verification step failed.  This always signals a bug in the
    engine, never bad user input."""
