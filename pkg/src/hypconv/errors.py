"""Exception hierarchy shared by every module of the package."""

from .special import PoleError

__all__ = [
    "PoleError",
    "CPole",
    "NoConvergence",
    "TermCapExceeded",
    "ConnectionUnavailable",
    "NotConvergentAtOne",
    "CaseNotApplicable",
    "CFDivisionByZero",
    "CFNotConverged",
    "PreconditionViolated",
    "LimitNotFinite",
    "DerivativeZero",
    "InconclusiveError",
    "InconsistencyError",
]


class CPole(PoleError):
    """c is one of 0, -1, -2, ...; the series is undefined."""


class NoConvergence(ValueError):
    """The requested expansion does not converge at this point."""


class TermCapExceeded(RuntimeError):
    """Series summation hit its term cap.

    The partially summed result is kept on ``partial``.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ConnectionUnavailable(ValueError):
    """The expansion about z = 1 degenerates (c - a - b a nonzero integer)."""


class NotConvergentAtOne(ValueError):
    """The series diverges at z = 1 because c - a - b <= 0."""


class CaseNotApplicable(ValueError):
    """Parameters fall outside every case of the requested formula."""


class CFDivisionByZero(ZeroDivisionError):
    """A continued-fraction coefficient has a vanishing denominator."""


class CFNotConverged(RuntimeError):
    """Continued fraction did not settle within the depth cap."""


class PreconditionViolated(ValueError):
    """Parameters are outside the box where a method is valid."""


class LimitNotFinite(ValueError):
    """A boundary limit is infinite or does not exist for these parameters."""


class DerivativeZero(ArithmeticError):
    """(zF)' vanishes (numerically) at the evaluation point.

    ``location`` holds the offending point and ``report`` the zero-scan
    summary when one was run.
    """

    def __init__(self, message, location=None, report=None):
        super().__init__(message)
        self.location = location
        self.report = report


class InconclusiveError(RuntimeError):
    """The numerical oracle could not classify the boundary trend.

    ``scan`` carries the diagnostics gathered before giving up.
    """

    def __init__(self, message, scan=None):
        super().__init__(message)
        self.scan = scan


class InconsistencyError(RuntimeError):
    """Two independent routes to the same quantity disagree."""
