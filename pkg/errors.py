"""
Octodp — Error Types
Exception hierarchy shared by every package; the CLI maps it to exit codes.
"""


class OctodpError(Exception):
    """Base class for all octodp failures."""


class PreconditionError(OctodpError, ValueError):
    """A mathematical precondition does not hold (exit status 1).

    Raised for inadmissible moduli, composite or small primes, unparseable
    rationals, skew lines passed to a plane span, and similar input faults.
    """


class InvariantViolation(OctodpError, RuntimeError):
    """An internal identity failed to hold (exit status 2)."""


class ExactDivisionError(InvariantViolation):
    """A polynomial division that must be exact left a remainder."""


class DegenerateSystemError(OctodpError):
    """Every Macaulay row/column selection left a vanishing extraneous minor."""
