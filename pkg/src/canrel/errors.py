"""Exception types shared across the package."""
from __future__ import annotations


class CanrelError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(CanrelError):
    """Operands live in incompatible ambient dimensions."""


class CompositionMismatch(CanrelError):
    """Morphisms (or adjacent path entries) do not compose.

    ``index`` locates the offending junction when the error arises from a
    word of morphisms; it is None for a plain binary composition.
    """

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class InvariantViolation(CanrelError):
    """A value failed a construction invariant (e.g. a non-lagrangian graph)."""


class CollapseRefused(CanrelError):
    """A path collapse was requested on a pair that is not strongly transversal.

    ``evidence`` carries the pair analysis that justified the refusal.
    """

    def __init__(self, message: str, evidence=None):
        super().__init__(message)
        self.evidence = evidence


class EngineMismatch(CanrelError):
    """An operation was invoked on an engine that does not support it."""


class DocumentError(CanrelError):
    """Malformed input document: bad JSON shape, schema, or reference."""


class UnknownPredicate(DocumentError):
    """A predicate name outside the supported set."""
