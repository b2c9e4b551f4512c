"""Exception hierarchy shared by all modules.

The CLI maps :class:`FeasibilityError` to exit status 3 and every other
:class:`MotiveError` raised while computing to status 1.
"""

from __future__ import annotations


class MotiveError(Exception):
    """Base class for errors raised by this package."""


class FeasibilityError(MotiveError):
    """An enumeration would exceed its hard size guard."""


class TooLarge(FeasibilityError):
    pass


# coefficient ring
class PoleAtOne(MotiveError, ArithmeticError):
    pass


class HalfPowerPresent(MotiveError, ValueError):
    pass


class DenominatorZero(MotiveError, ZeroDivisionError):
    pass


# series
class GradingMismatch(MotiveError, ValueError):
    pass


class NotAntisymmetric(MotiveError, ValueError):
    pass


class NonzeroConstantTerm(MotiveError, ValueError):
    pass


class ConstantTermNotOne(MotiveError, ValueError):
    pass


class ZeroExponentVector(MotiveError, ValueError):
    pass


class NotNilpotent(MotiveError, ValueError):
    """A term has weighted degree 0 in an uncapped direction, so its powers never truncate."""


class NonIntegralResult(MotiveError, AssertionError):
    pass


# quivers and roots
class DimensionMismatch(MotiveError, ValueError):
    pass


class UnknownType(MotiveError, ValueError):
    pass


class UnknownGroup(MotiveError, ValueError):
    pass


# finite fields and counting
class NotPrimePower(MotiveError, ValueError):
    pass


class UnsupportedField(MotiveError, ValueError):
    pass


class InsufficientSamples(MotiveError, ValueError):
    pass


class NonIntegerCoefficients(MotiveError, ValueError):
    pass


# generating functions
class MissingKacEntry(MotiveError, KeyError):
    pass


class NotGeneric(MotiveError, ValueError):
    def __init__(self, alpha: tuple[int, ...]):
        super().__init__(f"stability vector is orthogonal to {alpha}, which has a nonzero invariant")
        self.alpha = alpha


class NotPolynomialInT(MotiveError, ValueError):
    pass
