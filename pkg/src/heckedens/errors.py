"""Exception types shared across modules."""


class CapacityError(ValueError):
    """A size/range guard was violated (maps to CLI exit code 2)."""
