"""Exception types raised across the package."""


class IsoNLCSError(Exception):
    """Base class for all package errors."""


class DomainError(IsoNLCSError, ValueError):
    """Argument lies outside the mathematical domain of an operation."""


class RangeError(IsoNLCSError, ValueError):
    """Argument exceeds a configured numerical cap (table size, degree cap)."""


class UsageError(IsoNLCSError, ValueError):
    """Objects were combined incorrectly, e.g. operators built on different bases."""


class TruncationError(IsoNLCSError):
    """A state does not fit inside the truncated Fock basis.

    Carries ``suggested_n_max`` when a larger basis would resolve the problem.
    """

    def __init__(self, message, suggested_n_max=None):
        super().__init__(message)
        self.suggested_n_max = suggested_n_max


class UnsupportedStateError(IsoNLCSError, TypeError):
    """Operation is only defined for a particular family of states."""
