"""Exception hierarchy shared by every module."""


class PolyspaceError(Exception):
    """Base class for domain errors (CLI exit status 1)."""


class NonGeneric(PolyspaceError):
    """The length vector lies on a wall: some subset sum equals half the total."""


class DimensionMismatch(PolyspaceError):
    pass


class InvalidLengthVector(PolyspaceError):
    pass


class NotOrdered(PolyspaceError):
    pass


class InvalidAntichain(PolyspaceError):
    pass


class OutOfRange(PolyspaceError):
    pass


class Unrealizable(PolyspaceError):
    pass


class NotSpecial(PolyspaceError):
    pass


class WrongType(PolyspaceError):
    pass


class Unsupported(PolyspaceError):
    """Raised for chambers whose ring presentation is not built (empty, disconnected)."""
