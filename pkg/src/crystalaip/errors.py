"""Exception hierarchy shared by all modules."""


class CrystalAipError(Exception):
    """Base class for every error raised by this package."""


class ShapeError(CrystalAipError, ValueError):
    pass


class BoundsError(CrystalAipError, IndexError):
    pass


class IntegerOverflowError(CrystalAipError, OverflowError):
    pass


class StructureError(CrystalAipError, ValueError):
    """Malformed album / digraph / input document."""


class RealismError(CrystalAipError, ValueError):
    """An album violates the compatibility condition between pictures.

    ``quadruple`` holds the first violating ``(i, j, r, s)`` (1-based tuples).
    """

    def __init__(self, message, quadruple=None):
        super().__init__(message)
        self.quadruple = quadruple


class BalanceError(CrystalAipError, ValueError):
    """Row sums and column sums of a crystal matrix differ."""


class ArgumentError(CrystalAipError, ValueError):
    pass


class UnsupportedError(CrystalAipError, ValueError):
    pass


class CapacityError(CrystalAipError, RuntimeError):
    """Instance exceeds a configured desk-scale limit."""
