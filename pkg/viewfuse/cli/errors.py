"""CLI exception classes."""

from __future__ import annotations

from ..core.errors import InvalidInputError


class CliUsageError(InvalidInputError):
    """Base class for user-facing flag errors."""


class InvalidListError(CliUsageError):
    """Raised when a comma-separated flag value cannot be parsed."""

    def __init__(self, option: str, value: str, expected: str) -> None:
        super().__init__(f"Invalid {option} '{value}'. Expected {expected}.")
