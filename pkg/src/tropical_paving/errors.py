"""Exception types shared across the package."""

from __future__ import annotations


class DimensionError(ValueError):
    """Vectors or lattices of incompatible ambient dimension were combined."""


class ValidationError(ValueError):
    """Input failed a structural check.

    ``witness`` carries whatever object demonstrates the failure (an axiom
    violation, an offending pair of points, ...), so callers can report it.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ResourceLimitError(RuntimeError):
    """An enumeration would exceed a configured size limit."""
