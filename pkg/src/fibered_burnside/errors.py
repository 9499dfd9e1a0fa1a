"""Exception types shared across the package."""


class GroupInputError(ValueError):
    """Malformed group or fiber input."""


class SizeLimitError(GroupInputError):
    """A group exceeds the configured order cap."""


class InternalConsistencyError(AssertionError):
    """A quantity that is provably consistent failed to check out.

    Seeing this means a bug in this package, not bad input.
    """
