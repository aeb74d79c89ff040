"""Exception hierarchy shared by every module of the package."""


class StarloopError(Exception):
    """Base class for all errors raised by starloop."""


# jets
class SingularMatrix(StarloopError, ArithmeticError):
    pass


class OrderExceeded(StarloopError, ValueError):
    pass


class CenterMismatch(StarloopError, ValueError):
    pass


class DimensionMismatch(StarloopError, ValueError):
    pass


class DomainError(StarloopError, ValueError):
    pass


# nu-series
class TruncationUnderflow(StarloopError, ValueError):
    pass


class NotInvertible(StarloopError, ArithmeticError):
    pass


class NotUnipotent(StarloopError, ValueError):
    pass


# disk algebra
class SingularZerothOrder(NotInvertible):
    pass


class NoConvergence(StarloopError, ArithmeticError):
    pass


class BoundaryNotFlat(StarloopError, ValueError):
    pass


# determinants and cocycles
class NotInDG(StarloopError, ValueError):
    pass


class PathNotInG(StarloopError, ValueError):
    pass


class LaurentObstruction(StarloopError, ArithmeticError):
    pass


class BoundaryNotCommuting(StarloopError, ValueError):
    pass


# topology
class NonUnitarySlice(StarloopError, ValueError):
    pass


# higher dimensions / currents
class InvalidSpin(StarloopError, ValueError):
    pass


class CutoffTooLarge(StarloopError, ValueError):
    pass


# cli
class ConfigError(StarloopError, ValueError):
    pass
