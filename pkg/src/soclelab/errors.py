"""Exception types shared across the package."""


class SocleLabError(Exception):
    pass


class UnsupportedInputError(SocleLabError):
    """Input outside the supported envelope (malformed file, order cap, not a group)."""


class InapplicableError(SocleLabError):
    """Preconditions of an operation do not hold for this group/prime. Benign."""


class ConsistencyError(SocleLabError):
    """Two computations that must agree disagreed. Never ignored."""
