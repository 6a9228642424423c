"""Exception hierarchy shared by the library and the command line."""


class EdcsError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(EdcsError, ValueError):
    """Invalid arguments: bad (beta, beta_minus), wrong vector length, etc."""


class ContractViolation(EdcsError):
    """An input broke a documented precondition (e.g. a non-maximum matching)."""


class SolverError(EdcsError, RuntimeError):
    """The simplex exceeded its iteration cap or hit an internal inconsistency."""


class RealizationError(EdcsError):
    """An LP solution could not be turned into a concrete simple graph."""


class InternalError(EdcsError):
    """A result failed its own post-check; always a bug, never user error."""
