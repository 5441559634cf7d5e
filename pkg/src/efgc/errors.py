"""Exception types shared across the library."""


class EfgcError(Exception):
    pass


class DimensionMismatch(EfgcError):
    pass


class NonUnitLeadingCoefficient(EfgcError):
    pass


class UnsupportedRing(EfgcError):
    pass


class GroupTooLarge(EfgcError):
    pass


class GroupMismatch(EfgcError):
    pass


class NotASubgroup(EfgcError):
    pass


class ValidationFailed(EfgcError):
    def __init__(self, msg, report=None):
        super().__init__(msg)
        self.report = report


class NonUnitDeterminant(EfgcError):
    pass


class NotAPoint(EfgcError):
    pass


class IllegalSubstitution(EfgcError):
    """Raised when mapping x to an image whose f-value is not nilpotent enough.

    `nilpotency` carries the least exponent that kills f(image), or None if no
    power up to the truncation vanished.
    """

    def __init__(self, msg, nilpotency=None):
        super().__init__(msg)
        self.nilpotency = nilpotency


class PrecisionExceeded(EfgcError):
    pass


class BaseMismatch(EfgcError):
    pass


class NotContained(EfgcError):
    pass


class CutoffTooSmall(EfgcError):
    pass


class NotNilpotent(EfgcError):
    pass


class OpennessFailed(EfgcError):
    pass


class DegreeMismatch(EfgcError):
    pass


class NonMonicDenominator(EfgcError):
    pass


class NotDivisible(EfgcError):
    pass


class ExactDivisionFailed(EfgcError):
    pass


class UnsupportedModel(EfgcError):
    pass


class NotInvertibleOrder(EfgcError):
    pass


class NotInvertible(EfgcError):
    pass


class ExprError(EfgcError):
    pass


class ParseError(EfgcError):
    pass
