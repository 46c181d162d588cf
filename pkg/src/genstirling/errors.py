"""Exception hierarchy.

Every error carries the process exit code the command-line front end
reports for it, so library callers and the CLI share one taxonomy.
"""


class GenStirlingError(Exception):
    exit_code = 1


class InputError(GenStirlingError, ValueError):
    """Unparseable or out-of-range argument."""

    exit_code = 2


class DegenerateTripleError(GenStirlingError, ValueError):
    """The parameter triple (0, 0, 0) was supplied where it is excluded."""

    exit_code = 3


class UnsupportedParameterError(GenStirlingError, ValueError):
    """The requested method does not apply to these parameters."""

    exit_code = 3


class NotInvertibleError(GenStirlingError, ValueError):
    exit_code = 3


class PoleError(GenStirlingError, ZeroDivisionError):
    """A Gamma (or factorial) argument landed on a pole.

    ``which`` names the offending argument, e.g. ``"numerator"``.
    """

    exit_code = 5

    def __init__(self, message, which=None):
        super().__init__(message)
        self.which = which


class BranchError(GenStirlingError, ValueError):
    exit_code = 5


class ConvergenceRegimeError(GenStirlingError, ValueError):
    """Query lies outside the regime where the defining series converges."""

    exit_code = 5


class NonConvergenceError(GenStirlingError, ArithmeticError):
    exit_code = 6


class DisagreementError(GenStirlingError, AssertionError):
    exit_code = 4
