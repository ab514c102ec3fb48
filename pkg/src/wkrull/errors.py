"""Exception types shared across the package."""


class WkrullError(Exception):
    pass


class NotPositive(WkrullError):
    """The generators admit no strictly positive grading (the monoid has units)."""


class NotPointed(WkrullError):
    """The cone contains a line."""


class UnsupportedDimension(WkrullError):
    pass


class DimensionMismatch(WkrullError):
    pass


class UnsupportedMonoid(WkrullError):
    pass


class NotInQuotientGroup(WkrullError):
    pass


class NotNormal(WkrullError):
    pass


class PreconditionViolated(WkrullError):
    pass


class ParentMismatch(WkrullError):
    pass


class DepthExceeded(WkrullError):
    pass


class BoundExceeded(WkrullError):
    """A minimal generator showed up in the top layer of a search box.

    ``bound`` is the box that failed; ``partial`` holds the generators found
    so far so callers can still extract one-sided certificates.
    """

    def __init__(self, message, bound, partial=()):
        super().__init__(message)
        self.bound = bound
        self.partial = tuple(partial)


class Inconclusive(WkrullError):
    """A bounded search ran out of room before reaching a verdict."""
