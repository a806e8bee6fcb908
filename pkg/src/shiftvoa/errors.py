"""Exception hierarchy shared by every module."""


class ShiftVOAError(Exception):
    """Base class for all errors raised by this package."""


class LatticeError(ShiftVOAError):
    pass


class NotSymmetric(LatticeError):
    pass


class NotEven(LatticeError):
    pass


class NotPositiveDefinite(LatticeError):
    pass


class UnknownName(LatticeError):
    pass


class BadParameter(ShiftVOAError):
    pass


class EmptyInput(ShiftVOAError):
    pass


class DimensionMismatch(ShiftVOAError):
    pass


class NegativeBound(ShiftVOAError):
    pass


class BeyondOrder(ShiftVOAError):
    """A coefficient was requested at or past the known truncation order."""


class ComplexShiftUnsupported(ShiftVOAError):
    pass


class NotInDualLattice(ShiftVOAError):
    pass


class NotVOACase(ShiftVOAError):
    """The shift is complex or lies outside the dual lattice, so V is not Z-graded."""


class NotMultipleOf8(ShiftVOAError):
    pass


class CentralChargeTooNegative(ShiftVOAError):
    pass


class TruncationTooSmall(ShiftVOAError):
    def __init__(self, message, minimal_bound=None):
        super().__init__(message)
        self.minimal_bound = minimal_bound


class NonIntegralExponent(ShiftVOAError):
    pass


class ClassificationMismatch(ShiftVOAError):
    """Explicit L(1) codimension disagrees with the self-duality criterion."""


class ConfigError(ShiftVOAError):
    pass
