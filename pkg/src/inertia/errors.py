"""Exception types shared across the library."""

from __future__ import annotations


class InertiaError(Exception):
    """Base class for all library-specific errors."""


class OrderCapExceededError(InertiaError):
    """Group enumeration grew past the configured order cap."""


class InvalidCayleyTableError(InertiaError):
    """A multiplication table fails the group axioms.

    Carries the offending triple (or pair) in ``witness`` when available.
    """

    def __init__(self, message: str, witness: tuple | None = None):
        super().__init__(message)
        self.witness = witness


class UnknownClassError(InertiaError):
    """A basis label does not resolve to a registered group."""


class FlagCapExceededError(InertiaError):
    """Flag enumeration requested beyond the configured rank cap."""


class NotDiagonalizableError(InertiaError):
    """Lagrange projectors failed verification; carries the bad eigenvalue."""

    def __init__(self, message: str, eigenvalue=None):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class PartialFixtureError(InertiaError):
    """The operation needs matrix columns that the fixture leaves unknown."""
