"""Exception types shared across the library.

Each carries an ``exit_code`` so the command line front end can map
failures to its documented exit statuses without inspecting messages.
"""


class SchemaError(ValueError):
    """Malformed instance data (bad JSON shape, bad colors, bad advantage sets)."""

    exit_code = 2


class InternalInvariantError(RuntimeError):
    """A machine-checked guarantee failed; indicates a bug, not bad input."""

    exit_code = 3


class PreconditionError(ValueError):
    """Input is well-formed but outside an operation's stated preconditions."""

    exit_code = 4


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed its state or pattern budget."""

    exit_code = 5


class InstanceTooLargeError(BudgetExceededError):
    """Instance exceeds a hard size cap of an exhaustive procedure."""
