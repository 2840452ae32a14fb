"""Exception hierarchy.

Precondition violations derive from :class:`PreconditionError` (CLI exit code 2);
internal consistency failures derive from :class:`InternalMismatch` (exit code 3).
"""

from __future__ import annotations


class FiniteEpsilonError(Exception):
    """Base class for every error raised by this package."""


class PreconditionError(FiniteEpsilonError, ValueError):
    """An operation was called outside its domain."""


class NonPrimeBase(PreconditionError):
    pass


class ReducibleModulus(PreconditionError):
    pass


class NonPrimitiveModulus(PreconditionError):
    pass


class NonDivisorDegree(PreconditionError):
    pass


class ElementNotInSubfield(PreconditionError):
    pass


class ZeroElement(PreconditionError, ZeroDivisionError):
    pass


class NonFStableInput(PreconditionError):
    pass


class NonRegularOrbit(PreconditionError):
    pass


class DegreeTooSmall(PreconditionError):
    pass


class DegreeOrderViolation(PreconditionError):
    pass


class PreconditionNotDegenerate(PreconditionError):
    pass


class ScaleExceeded(PreconditionError):
    pass


class InternalMismatch(FiniteEpsilonError, AssertionError):
    """Two routes that must agree produced different exact values."""
