"""Text matrix format.

A matrix file is a ``rows cols`` header line followed by ``rows`` lines of ``cols``
space-separated literals. Literals are the shortest repr that round-trips binary64
exactly, so ``read_matrix(write_matrix(M))`` is bit-identical to ``M``. ASCII only,
LF newlines.
"""

from __future__ import annotations

import re
from collections.abc import Sequence
from pathlib import Path

import numpy as np
from numpy.typing import ArrayLike

from ..core.errors import InvalidInputError, MatrixFormatError

_DECIMAL_LITERAL = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?", re.ASCII)


def _format_float(value: float) -> str:
    return repr(float(value))


def format_matrix(matrix: ArrayLike) -> str:
    """Serialize a 2-D array to matrix-file text."""
    values = np.asarray(matrix, dtype=np.float64)
    if values.ndim != 2:
        raise InvalidInputError(f"Expected a 2-D matrix, got shape {values.shape}")
    if not np.all(np.isfinite(values)):
        raise InvalidInputError("Matrix contains non-finite entries")
    lines = [f"{values.shape[0]} {values.shape[1]}"]
    lines.extend(" ".join(_format_float(x) for x in row) for row in values)
    return "\n".join(lines) + "\n"


def write_matrix(matrix: ArrayLike, path: Path | str) -> None:
    """Write ``matrix`` to ``path``, creating parent directories."""
    path = Path(path)
    text = format_matrix(matrix)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="ascii", newline="\n") as f:
        f.write(text)


def _parse_header(line: str, path: Path | str, lineno: int) -> tuple[int, int]:
    tokens = line.split(" ")
    if len(tokens) != 2 or not all(t.isdigit() for t in tokens):
        raise MatrixFormatError(path, lineno, f"malformed header {line!r}, expected 'rows cols'")
    return int(tokens[0]), int(tokens[1])


def _parse_row(line: str, cols: int, path: Path | str, lineno: int) -> list[float]:
    tokens = line.split()
    if len(tokens) != cols:
        raise MatrixFormatError(path, lineno, f"expected {cols} values, found {len(tokens)}")
    row = []
    for token in tokens:
        if not _DECIMAL_LITERAL.fullmatch(token):
            raise MatrixFormatError(path, lineno, f"not a decimal literal {token!r}")
        value = float(token)
        if not np.isfinite(value):
            raise MatrixFormatError(path, lineno, f"value out of range {token!r}")
        row.append(value)
    return row


def _parse_block(
    lines: Sequence[str], start: int, path: Path | str
) -> tuple[np.ndarray, int]:
    """Parse one matrix block starting at ``lines[start]``; return it and the next index."""
    if start >= len(lines):
        raise MatrixFormatError(path, start + 1, "missing header")
    rows, cols = _parse_header(lines[start], path, start + 1)
    values = np.empty((rows, cols), dtype=np.float64)
    for r in range(rows):
        index = start + 1 + r
        if index >= len(lines):
            raise MatrixFormatError(path, index + 1, f"expected {rows} rows, found {r}")
        values[r] = _parse_row(lines[index], cols, path, index + 1)
    return values, start + 1 + rows


def _read_lines(path: Path | str) -> list[str]:
    with open(path, "rb") as f:
        raw = f.read()
    try:
        text = raw.decode("ascii")
    except UnicodeDecodeError as exc:
        line = raw[: exc.start].count(b"\n") + 1
        raise MatrixFormatError(path, line, "non-ASCII content") from None
    if "\r" in text:
        raise MatrixFormatError(path, text[: text.index("\r")].count("\n") + 1, "CR newline")
    if text.endswith("\n"):
        text = text[:-1]
    return text.split("\n") if text else []


def parse_matrix(text: str, source: Path | str = "<string>") -> np.ndarray:
    """Parse matrix-file text; trailing content is an error."""
    lines = text[:-1].split("\n") if text.endswith("\n") else text.split("\n")
    values, end = _parse_block(lines, 0, source)
    if end != len(lines):
        raise MatrixFormatError(source, end + 1, "unexpected content after last row")
    return values


def read_matrix(path: Path | str) -> np.ndarray:
    """Read a matrix file written by ``write_matrix``."""
    lines = _read_lines(path)
    values, end = _parse_block(lines, 0, path)
    if end != len(lines):
        raise MatrixFormatError(path, end + 1, "unexpected content after last row")
    return values


def write_matrix_blocks(header: str, blocks: Sequence[ArrayLike], path: Path | str) -> None:
    """Write a one-line ``header`` followed by several matrix blocks."""
    if "\n" in header:
        raise InvalidInputError("Block-file header must be a single line")
    path = Path(path)
    text = header + "\n" + "".join(format_matrix(block) for block in blocks)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="ascii", newline="\n") as f:
        f.write(text)


def read_matrix_blocks(path: Path | str) -> tuple[str, list[np.ndarray]]:
    """Read a file written by ``write_matrix_blocks``; return its header and blocks."""
    lines = _read_lines(path)
    if not lines:
        raise MatrixFormatError(path, 1, "empty file")
    blocks = []
    index = 1
    while index < len(lines):
        block, index = _parse_block(lines, index, path)
        blocks.append(block)
    return lines[0], blocks


def write_labels(labels: Sequence[int] | np.ndarray, path: Path | str) -> None:
    """Write class indices as an ``n 1`` matrix file of integers."""
    values = np.asarray(labels)
    if values.ndim != 1 or (values.size and not np.issubdtype(values.dtype, np.integer)):
        raise InvalidInputError("Labels must be a 1-D sequence of integers")
    path = Path(path)
    text = f"{values.size} 1\n" + "".join(f"{int(v)}\n" for v in values)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="ascii", newline="\n") as f:
        f.write(text)


def read_labels(path: Path | str) -> np.ndarray:
    """Read a labels file; every entry must be a non-negative integer."""
    values = read_matrix(path)
    if values.shape[1] != 1:
        raise MatrixFormatError(path, 1, f"labels file must have one column, got {values.shape[1]}")
    column = values[:, 0]
    bad = np.flatnonzero((column != np.floor(column)) | (column < 0))
    if bad.size:
        raise MatrixFormatError(path, int(bad[0]) + 2, "label is not a non-negative integer")
    return column.astype(np.int64)
