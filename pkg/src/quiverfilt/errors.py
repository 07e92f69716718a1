"""Exception hierarchy shared across the toolkit.

The CLI maps these onto exit codes, so new error conditions should reuse
one of the classes below instead of raising bare ValueErrors.
"""


class ToolkitError(Exception):
    """Base class for all errors raised by this package."""


class InvariantError(ToolkitError):
    """A value violates a structural invariant (shapes, fields, preconditions)."""


class FormatError(ToolkitError):
    """A document is syntactically malformed (bad JSON, missing keys)."""


class BudgetError(ToolkitError):
    """A computation would exceed the configured dimension budget."""


class UndecidedError(ToolkitError):
    """A certified search was exhausted without reaching a verdict."""


class InapplicableError(ToolkitError):
    """The hypotheses of the requested check are not satisfied by the input."""
