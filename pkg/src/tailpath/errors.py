"""Exception hierarchy shared across the package.

Everything raised on purpose derives from TailPathError so callers can catch
library failures without also swallowing programming errors.
"""


class TailPathError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(TailPathError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConvergenceError(TailPathError, RuntimeError):
    """An iterative routine exhausted its budget without meeting tolerance."""


class BracketError(ConvergenceError):
    """A root or maximum could not be bracketed on the given interval."""


class DegenerateTailError(TailPathError):
    """The tail copula vanishes identically, so tail quantities are undefined.

    Raised instead of silently returning 0/0 artifacts when a model has no
    upper tail dependence along any direction (for example the independence
    copula, or the FGM family).
    """


class ScheduleError(TailPathError, ValueError):
    """A grid or schedule argument is malformed or inconsistent."""
