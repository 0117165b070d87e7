"""Exception taxonomy shared by every module and mapped to CLI exit codes."""


class PDLoopError(Exception):
    """Base class for all errors raised by pdloop."""


class InputError(PDLoopError, ValueError):
    """Malformed input: bad parameters, unparsable documents, invalid data."""

    exit_code = 2


class HypothesisError(PDLoopError):
    """A hypothesis of the theorem being applied does not hold (or is unknown).

    ``hypothesis`` names the missing condition so reports can quote it.
    """

    exit_code = 1

    def __init__(self, message, hypothesis=None, reasons=()):
        super().__init__(message)
        self.hypothesis = hypothesis or message
        self.reasons = tuple(reasons)


class NotCoHError(HypothesisError):
    """A half-smash whose first argument is not syntactically a co-H-space."""


class NoPlanError(HypothesisError):
    """No localization theorem applies to the given complex."""
