"""Exception types shared across the package."""

from __future__ import annotations


class DeformExpError(Exception):
    """Base class for all errors raised by deformexp."""


class DomainError(DeformExpError, ValueError):
    """An argument lies outside the domain of the requested operation.

    ``value`` is the offending argument and ``interval`` (when known) the
    admissible set, both kept so the CLI can print them verbatim.
    """

    def __init__(self, message: str, value=None, interval=None):
        super().__init__(message)
        self.value = value
        self.interval = interval


class ConvergenceError(DeformExpError, ArithmeticError):
    """A series hit ``max_terms`` before meeting its tolerance."""

    def __init__(self, message: str, result=None):
        super().__init__(message)
        self.result = result


class UnknownIdentityError(DeformExpError, LookupError):
    pass


class EmptyGridError(DeformExpError, ValueError):
    pass
