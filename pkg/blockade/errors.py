"""Exception hierarchy for blockade.

Every error raised on bad input derives from ``BlockadeError``; the ones
signalling invalid arguments also derive from ``ValueError``.
"""

from __future__ import annotations

from typing import Any, Optional


class BlockadeError(Exception):
    """Root of all domain errors."""

    def __init__(self, message: str, path: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.path = path

    def to_dict(self) -> dict[str, Any]:
        """Structured form used by the CLI error report."""
        data: dict[str, Any] = {"type": type(self).__name__, "message": self.message}
        if self.path is not None:
            data["path"] = self.path
        return data


class InvalidRootSystemError(BlockadeError, ValueError):
    """Raised for a (type, rank) pair that names no finite root system."""


class NotDominantError(BlockadeError, ValueError):
    """Raised when an operation needs a dominant weight."""


class NotARootError(BlockadeError, ValueError):
    """Raised when a root-string query is made on a non-root."""


class WeightRankError(BlockadeError, ValueError):
    """Raised when a weight has the wrong number of coordinates."""


class OrbitSpaceError(BlockadeError, ValueError):
    """Raised for an inconsistent orbit space presentation."""


class DescriptorError(BlockadeError, ValueError):
    """Raised for a module descriptor that does not fit its orbit space."""


class SearchBoundError(BlockadeError, ValueError):
    """Raised when a linkage search window cannot contain its endpoints."""


class InconsistentExtDataError(BlockadeError, ValueError):
    """Raised when Ext data violates the block-sum isomorphism."""


class MargauxOrbitCollisionError(BlockadeError, ValueError):
    """Raised when two Margaux points lie in the same sign-flip orbit."""

    def __init__(self, message: str, first: Any, second: Any):
        super().__init__(message)
        self.first = first
        self.second = second


class DescriptorFormatError(BlockadeError, ValueError):
    """Raised for a malformed JSON descriptor file."""


class DimensionCheckError(BlockadeError):
    """Raised when an internal dimension identity fails."""


class SettingsError(BlockadeError, ValueError):
    """Raised when a settings update is rejected or cannot be saved."""
