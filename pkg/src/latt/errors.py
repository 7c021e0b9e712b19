"""Exception hierarchy.

Every error raised on purpose by the package derives from ``LatticeError``.
The ``exit_code`` attribute is what the command line front end returns.
"""


class LatticeError(Exception):
    exit_code = 4


class NotAPartialOrder(LatticeError):
    pass


class NotALattice(LatticeError):
    pass


class Unbounded(LatticeError):
    pass


class CapExceeded(LatticeError):
    pass


class NotComparable(LatticeError):
    pass


class TrivialSummand(LatticeError):
    pass


class NotACongruence(LatticeError):
    pass


class FullCongruenceInHsum(LatticeError):
    pass


class NotDeltaPreserving(LatticeError):
    pass


class NotASublattice(LatticeError):
    pass


class BadElements(LatticeError):
    pass


class InvalidOperation(LatticeError):
    """A table fails the (dual) weak complementation axioms."""


class ParseError(LatticeError):
    exit_code = 2


class FormatError(LatticeError):
    """Malformed input file (JSON, cxt, csv)."""

    exit_code = 3
