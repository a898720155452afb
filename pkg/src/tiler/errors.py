"""Exception types raised across the package."""


class TilerError(Exception):
    """Base class for all errors raised by :mod:`tiler`."""


class EdgeUsedThrice(TilerError, ValueError):
    pass


class DegenerateFace(TilerError, ValueError):
    pass


class BoundaryNotSupported(TilerError, ValueError):
    pass


class BoundaryVertex(TilerError, ValueError):
    pass


class TooShort(TilerError, ValueError):
    pass


class NotPolyhedral(TilerError, ValueError):
    pass


class UnknownTiling(TilerError, KeyError):
    pass


class SearchBudgetExceeded(TilerError, RuntimeError):
    pass


class NoSuchFaceSize(TilerError, ValueError):
    pass


class WrongType(TilerError, ValueError):
    pass


class GrowthStuck(TilerError, RuntimeError):
    pass


class RangeViolation(TilerError, ValueError):
    pass


class WrongHost(TilerError, ValueError):
    pass


class PropertyFails(TilerError, ValueError):
    pass
