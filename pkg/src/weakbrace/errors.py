"""Exception hierarchy.

Every failure raised by the engine carries a ``witness`` tuple of element
indices (possibly empty) so callers can report the offending elements.
"""

from __future__ import annotations


class AlgebraError(Exception):
    """Base class for all structured rejections."""

    def __init__(self, message: str = "", witness: tuple = ()):
        super().__init__(message or type(self).__name__)
        self.witness = tuple(witness)


class ImplicationViolation(AlgebraError):
    """A statement that must hold for every valid input was observed false.

    Signals either an engine bug or a counterexample to a published result;
    never swallowed.
    """


# --- magma construction -------------------------------------------------

class MagmaError(AlgebraError):
    pass


class DimensionMismatch(MagmaError):
    pass


class IndexOutOfRange(MagmaError):
    pass


class DuplicateName(MagmaError):
    pass


# --- semigroup structure ------------------------------------------------

class NotAssociative(AlgebraError):
    pass


class NotRegular(AlgebraError):
    pass


class InverseNotUnique(AlgebraError):
    pass


class IdempotentsDontCommute(AlgebraError):
    pass


class NotClifford(AlgebraError):
    pass


# --- morphisms ----------------------------------------------------------

class CarrierTooLarge(AlgebraError):
    pass


class EndoNotInList(AlgebraError):
    pass


class NoIdentity(AlgebraError):
    pass


# --- braces -------------------------------------------------------------

class BraceError(AlgebraError):
    pass


class AddNotInverse(BraceError):
    pass


class MulNotInverse(BraceError):
    pass


class DistributivityFails(BraceError):
    pass


class InverseAxiomFails(BraceError):
    pass


class LambdaNotEndo(BraceError):
    pass


class NotDual(BraceError):
    pass


# --- correspondences ----------------------------------------------------

class GoodError(AlgebraError):
    pass


class NotInverseSub(GoodError):
    pass


class G1Fails(GoodError):
    pass


class G2Fails(GoodError):
    pass


class G3Fails(GoodError):
    pass


class G4Fails(GoodError):
    pass


class GammaError(AlgebraError):
    pass


class F1Fails(GammaError):
    pass


class F2Fails(GammaError):
    pass


class F3Fails(GammaError):
    pass


class F4Fails(GammaError):
    pass


class D1Fails(GammaError):
    pass


class D2Fails(GammaError):
    pass


class D3Fails(GammaError):
    pass


class AffineError(AlgebraError):
    pass


class A1Fails(AffineError):
    pass


class A2Fails(AffineError):
    pass


class A3Fails(AffineError):
    pass


class AffineValidationFails(AffineError):
    pass


# --- semilattices / search / io -----------------------------------------

class SpecInvalid(AlgebraError):
    pass


class BudgetExceeded(AlgebraError):
    pass


class ParseError(Exception):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line
