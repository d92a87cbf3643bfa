"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class PennerError(Exception):
    """Base class for every error raised by this package."""


class InvalidParameter(PennerError, ValueError):
    """A numeric parameter is outside its admissible range."""


class InvalidInput(PennerError, ValueError):
    """An input object (graph, word, matrix) has the wrong shape or family."""


class PreconditionViolation(PennerError, ValueError):
    """A structural hypothesis of an operation does not hold."""


class ResourceLimit(PennerError):
    """The request exceeds a configured size limit."""


class DomainError(PennerError, ValueError):
    """A value is outside the mathematical domain of a function."""


class NotPerronFrobenius(PennerError, ValueError):
    """The matrix is not primitive, so it has no Perron-Frobenius eigenvalue."""


class UnsupportedGenus(PennerError, ValueError):
    """No pseudo-Anosov Penner mapping class exists for this genus."""


class IdentityMismatch(PennerError, AssertionError):
    """A closed-form identity disagrees with its brute-force oracle."""
