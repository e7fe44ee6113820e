"""Exception hierarchy for gfwigner."""


class GFWignerError(Exception):
    """Base class for all errors raised by this package."""


class FieldError(GFWignerError, ValueError):
    pass


class NotPrime(FieldError):
    pass


class ReduciblePolynomial(FieldError):
    pass


class WrongDegree(FieldError):
    pass


class UnsupportedSize(FieldError):
    pass


class ZeroInverse(FieldError, ZeroDivisionError):
    pass


class MixedFields(FieldError):
    pass


class MissingBasis(FieldError):
    pass


class MissingPrimitive(FieldError):
    pass


class SingularSystem(FieldError):
    pass


class LengthMismatch(FieldError):
    pass


class ElementParse(FieldError):
    pass


class MixedOrdering(GFWignerError, ValueError):
    pass


class DimensionMismatch(GFWignerError, ValueError):
    pass


class CharacteristicError(GFWignerError, ValueError):
    pass


class EvenCharacteristic(CharacteristicError):
    pass


class OddCharacteristic(CharacteristicError):
    pass


class ShiftAtZero(GFWignerError, ValueError):
    pass


class NoSolution(GFWignerError, ArithmeticError):
    pass


class ZeroSqueeze(GFWignerError, ValueError):
    pass


class ProvenanceMismatch(GFWignerError, ValueError):
    pass


class TooLarge(GFWignerError, ValueError):
    pass


class IncompleteTomogram(GFWignerError, ValueError):
    pass


class NonPhysicalState(GFWignerError, ValueError):
    pass


class BasisMismatch(GFWignerError, ValueError):
    pass


class MixedStateUnsupported(GFWignerError, ValueError):
    pass


class NotSorted(GFWignerError, ValueError):
    pass


class WrongLength(GFWignerError, ValueError):
    pass


class IdentityViolation(GFWignerError, AssertionError):
    """An algebraic identity that must hold by construction failed numerically."""


class ConfigParse(GFWignerError, ValueError):
    """A command-line option or input file could not be interpreted."""


class StateParse(ConfigParse):
    """A state description could not be turned into amplitudes."""


class NormZero(StateParse):
    """A state vector with zero norm cannot be normalized."""
