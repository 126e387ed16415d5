"""Exception hierarchy shared by every module of the toolkit."""

from __future__ import annotations


class HopfError(Exception):
    """Base class for all toolkit errors."""


class ShapeMismatch(HopfError):
    pass


class NotInvertible(HopfError):
    pass


class NotInSubspace(HopfError):
    pass


class AxiomViolation(HopfError):
    pass


class NotAMonoid(HopfError):
    pass


class NoAntipode(HopfError):
    pass


class NonUnique(HopfError):
    """A linear system that should have a unique solution has a kernel."""


class NotHopf(HopfError):
    pass


class Inconsistent(HopfError):
    pass


class FactorizationFailure(HopfError):
    pass


class SnakeFailure(HopfError):
    pass


class ParseError(HopfError):
    pass
