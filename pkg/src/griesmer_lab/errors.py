"""Exception hierarchy shared by every module."""

from __future__ import annotations


class GriesmerLabError(Exception):
    """Base class; carries an exit code for the command-line front-end."""

    exit_code = 1


class NonPrime(GriesmerLabError, ValueError):
    pass


class DegreeTooLarge(GriesmerLabError, ValueError):
    pass


class NoIrreducibleFound(GriesmerLabError, RuntimeError):
    pass


class DivisionByZero(GriesmerLabError, ZeroDivisionError):
    pass


class RangeError(GriesmerLabError, ValueError):
    pass


class DimensionMismatch(GriesmerLabError, ValueError):
    pass


class ZeroVector(GriesmerLabError, ValueError):
    pass


class InvariantViolation(GriesmerLabError, ValueError):
    """Parameters or layouts that break a construction's preconditions."""


class HypothesisNotMet(GriesmerLabError, ValueError):
    """A closed form was requested for a configuration it does not cover."""


class LayoutNotSupported(GriesmerLabError, ValueError):
    pass


class ProofCaseFailed(GriesmerLabError, RuntimeError):
    """Every repair pair prescribed by the constructive argument was invalid."""


class CapExceeded(GriesmerLabError, RuntimeError):
    exit_code = 2


class SpaceTooLarge(CapExceeded):
    pass


class EnumerationTooLarge(CapExceeded):
    pass
