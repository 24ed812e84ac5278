"""Exception hierarchy shared by every diassocle module."""

from __future__ import annotations

from typing import Optional


class DiassocleError(RuntimeError):
    """Base class for misuse and bad input; failed identities are reported, not raised."""


class FixtureError(DiassocleError):
    """Raised when a fixture file cannot be parsed or does not describe a consistent structure."""

    def __init__(self, message: str, *, path: Optional[str] = None, line: Optional[int] = None, column: Optional[int] = None) -> None:
        location = ""
        if line is not None:
            location = f"line {line}, column {column}: "
        elif path:
            location = f"at {path}: "
        super().__init__(f"{location}{message}")
        self.path = path
        self.line = line
        self.column = column


class DimensionMismatchError(DiassocleError):
    """Raised when two inputs disagree on a dimension."""


class ArityError(DiassocleError):
    """Raised when an arity, slot or leaf index is out of range."""


class NotAComplexError(DiassocleError):
    """Raised when consecutive coboundaries do not compose to zero."""


class InvalidStructureError(DiassocleError):
    """Raised when a structure fails its verifier where a valid one is required."""


class NotACocycleError(DiassocleError):
    """Raised when a cochain expected to be closed has a nonzero coboundary."""

    def __init__(self, message: str, *, component: Optional[str] = None) -> None:
        super().__init__(message if component is None else f"{message} (component {component})")
        self.component = component


class ResourceLimitError(DiassocleError):
    """Raised when a request exceeds the supported enumeration size."""


class TruncationError(DiassocleError):
    """Raised when a truncation bound is too small for the requested object."""


class GradingError(DiassocleError):
    """Raised when a graded table entry does not have the degree its operation requires."""
