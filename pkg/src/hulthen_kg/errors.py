"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class HulthenError(Exception):
    """Base class for all errors raised by :mod:`hulthen_kg`."""


class InvalidInput(HulthenError, ValueError):
    """A physical parameter or quantum number is outside its allowed range."""


class DomainError(HulthenError, ValueError):
    """A function was evaluated outside its mathematical domain."""


class ConstraintViolation(HulthenError):
    """A coupling-strength inequality required for a real spectrum failed.

    ``constraint`` names the inequality that was violated, e.g.
    ``"kappa_discriminant"``.
    """

    def __init__(self, constraint: str, message: str | None = None):
        self.constraint = constraint
        super().__init__(message or f"constraint violated: {constraint}")


class NoConvergence(HulthenError, RuntimeError):
    """An iterative solver failed to converge."""


class NotBound(HulthenError):
    """The requested state is not a normalizable bound state."""


class WeakCouplingViolated(HulthenError):
    """The weak-coupling preconditions of the relativistic expansion fail."""


class IntegrationBlowup(HulthenError, RuntimeError):
    """The shooting integration overflowed even after rescaling."""


class NotFoundInBracket(HulthenError):
    """No eigenvalue with the requested node count lies in the energy bracket."""
