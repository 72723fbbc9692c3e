"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class ConvGeomError(Exception):
    """Base class for every error raised by this package."""


class GroundSetMismatch(ConvGeomError, ValueError):
    """Two objects bound to different ground sets were combined."""


class InvalidClosureSystem(ConvGeomError, ValueError):
    """A family of sets fails the closure-system axioms."""


class NotZeroClosed(ConvGeomError, ValueError):
    """An operation needs the empty set to be closed and it is not."""


class NotAGeometry(ConvGeomError, ValueError):
    """A closure system was used where a convex geometry is required."""


class TooLarge(ConvGeomError, ValueError):
    """An exhaustive computation was refused by a size guard."""


class LimitExceeded(ConvGeomError, RuntimeError):
    """An enumeration produced more results than the caller allowed."""


class ConsistencyError(ConvGeomError, AssertionError):
    """A computed result contradicts a theorem the library relies on.

    Raising this always indicates a bug: every check that can raise it is
    backed by a proven statement about finite closure systems.
    """
