"""Exception classes shared across the pipeline."""

from __future__ import annotations

from pathlib import Path


class InvalidInputError(ValueError):
    """Raised when an operation receives input that violates its preconditions."""


class MatrixFormatError(InvalidInputError):
    """Raised when a matrix file cannot be parsed."""

    def __init__(self, path: Path | str, line: int, details: str) -> None:
        super().__init__(f"{path}:{line}: {details}")
        self.path = Path(path)
        self.line = line


class ManifestError(InvalidInputError):
    """Raised when a dataset manifest fails validation."""

    def __init__(self, path: Path | str, details: str) -> None:
        super().__init__(f"Invalid manifest {path}: {details}")
        self.path = Path(path)
