"""Exception types shared across the package."""


class InvalidRank(ValueError):
    """Rank parameter n outside the supported range (n >= 2)."""


class SingularPoint(ZeroDivisionError):
    """A rational map was evaluated where one of its denominators vanishes."""


class MissingBinding(KeyError):
    """An expression was evaluated without a value for one of its variables."""


class ResourceCap(RuntimeError):
    """A requested enumeration or scan exceeds its configured size limit."""
