"""Shared exception types."""


class TreehomError(Exception):
    """Base class for all package errors."""


class InputError(TreehomError):
    """Malformed or invariant-violating input."""


class BudgetExceededError(TreehomError):
    """An exhaustive search would exceed the configured budget."""


class DecodeError(TreehomError):
    """A decoder was handed a solution that fails its precondition."""


class UndeterminedError(TreehomError):
    """The horizon is too small to separate the construction's cases."""
