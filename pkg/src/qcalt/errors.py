"""Exception hierarchy shared by every qcalt module."""

from __future__ import annotations


class QcaltError(Exception):
    """Base class for all library errors."""


# --- finite fields and polynomials -------------------------------------------------


class NotPrime(QcaltError, ValueError):
    pass


class DegreeZero(QcaltError, ValueError):
    pass


class DivisionByZero(QcaltError, ZeroDivisionError):
    pass


class NotInSubfield(QcaltError, ValueError):
    pass


class ZeroElement(QcaltError, ValueError):
    pass


class NoSuchRoots(QcaltError, ValueError):
    pass


class ZeroPolynomial(QcaltError, ValueError):
    pass


class InsufficientEvaluationPoints(QcaltError, ValueError):
    pass


class BothZero(QcaltError, ValueError):
    pass


class DuplicateNodes(QcaltError, ValueError):
    pass


class FieldTooLarge(QcaltError, ValueError):
    pass


# --- linear algebra and codes -------------------------------------------------------


class LengthMismatch(QcaltError, ValueError):
    pass


class EmptyIndexSet(QcaltError, ValueError):
    pass


# --- projective line ----------------------------------------------------------------


class IdentityNotClassifiable(QcaltError, ValueError):
    pass


# --- AG codes -----------------------------------------------------------------------


class NegativeDegree(QcaltError, ValueError):
    pass


class NonRationalSupport(QcaltError, ValueError):
    pass


class SupportMeetsDivisor(QcaltError, ValueError):
    pass


class DuplicateSupport(QcaltError, ValueError):
    pass


class ZeroMultiplier(QcaltError, ValueError):
    pass


class BadDimension(QcaltError, ValueError):
    pass


class SupportNotStable(QcaltError, ValueError):
    pass


# --- key generation -----------------------------------------------------------------


class NotEnoughFreePoints(QcaltError, ValueError):
    pass


class StabilizedBasePoint(QcaltError, ValueError):
    pass


class OrbitCollision(QcaltError, ValueError):
    pass


class DegenerateDimension(QcaltError, ValueError):
    pass


# --- invariant / folded codes -------------------------------------------------------


class NotInvariant(QcaltError, ValueError):
    pass


class NotOrbitConstant(QcaltError, ValueError):
    pass


class WrongClass(QcaltError, ValueError):
    pass


class NotInvariantInstance(QcaltError, ValueError):
    pass


# --- attack -------------------------------------------------------------------------


class NoRoots(QcaltError):
    """A root-finding step of the divisor recovery came back empty."""


class EmptyCandidateSet(QcaltError):
    pass


class UnsolvableCoordinate(QcaltError):
    pass


class DescentFailed(QcaltError):
    pass


class SearchSpaceTooLarge(QcaltError, ValueError):
    pass


class NotFound(QcaltError):
    pass


class AttackFailure(QcaltError):
    """Every scalar candidate was exhausted without a verified permutation."""

    def __init__(self, tried: int, message: str = "") -> None:
        self.tried = tried
        super().__init__(message or f"attack failed after {tried} candidate(s)")
