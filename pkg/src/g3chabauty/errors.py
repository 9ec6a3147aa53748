"""Exception types shared across the package.

The CLI maps these onto distinct exit codes, so anything a caller may want to
route on should be raised as one of the classes below rather than a bare
ValueError.
"""


class G3Error(Exception):
    """Base class for package errors."""


class InputError(G3Error, ValueError):
    """Malformed or inconsistent user input (curve, job, point, CLI args)."""


class BadReductionError(G3Error, ValueError):
    """The requested prime divides the discriminant or a denominator."""


class PrecisionError(G3Error, ArithmeticError):
    """A result would be known to zero digits, or an audit found that the
    working precision was insufficient."""


class SimplicityError(G3Error, ArithmeticError):
    """Root isolation could not certify simple roots at working precision."""


class RecognitionError(G3Error, ValueError):
    """A zero-set member could not be classified at working precision."""
