"""
Plain-text matrix files.

Format (UTF-8): the first line holds ``n``; each of the next ``n`` lines
holds ``n`` whitespace-separated entries written as ``re`` or ``re+imj`` /
``re-imj``. Blank lines and lines starting with ``#`` are ignored.
"""

import logging
from pathlib import Path
from typing import List, Union

import numpy as np

from powerstormer.exceptions import InvalidInput, ReportIOError
from powerstormer.linalg import HermitianMatrix

logger = logging.getLogger("PowerStormer.MatrixIO")

FILE_HERMITIAN_ATOL = 1e-9


def _parse_entry(token: str, row: int, col: int) -> complex:
    try:
        return complex(token)
    except ValueError as e:
        raise InvalidInput(f"Bad matrix entry {token!r} at row {row + 1}, column {col + 1}") from e


def parse_matrix(text: str) -> HermitianMatrix:
    """Parse the text of a matrix file.

    Raises:
        InvalidInput: Malformed header, wrong row/column count, bad entries,
            or asymmetry above ``1e-9``.
    """
    lines: List[str] = [
        line.strip() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise InvalidInput("Matrix file is empty")
    try:
        n = int(lines[0])
    except ValueError as e:
        raise InvalidInput(f"First line must be the dimension, got {lines[0]!r}") from e
    if n < 1:
        raise InvalidInput(f"Dimension must be at least 1, got {n}")

    rows = lines[1:]
    if len(rows) != n:
        raise InvalidInput(f"Expected {n} rows, got {len(rows)}")

    entries = np.empty((n, n), dtype=np.complex128)
    for i, row in enumerate(rows):
        tokens = row.split()
        if len(tokens) != n:
            raise InvalidInput(f"Row {i + 1} has {len(tokens)} entries, expected {n}")
        for j, token in enumerate(tokens):
            entries[i, j] = _parse_entry(token, i, j)

    return HermitianMatrix(entries, atol=FILE_HERMITIAN_ATOL)


def read_matrix(path: Union[str, Path]) -> HermitianMatrix:
    """Read a Hermitian matrix file.

    Raises:
        ReportIOError: The file cannot be read.
        InvalidInput: The content is malformed.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise ReportIOError(f"Cannot read matrix file {path}: {e}") from e
    logger.debug(f"Read matrix file {path}")
    return parse_matrix(text)


def format_entry(value: complex) -> str:
    """17 significant digits; the imaginary part is omitted when it is exactly 0."""
    re, im = float(value.real), float(value.imag)
    if im == 0.0:
        return f"{re:.17g}"
    return f"{re:.17g}{im:+.17g}j"


def format_matrix(matrix: HermitianMatrix) -> str:
    lines = [str(matrix.dim)]
    for row in matrix.entries:
        lines.append(" ".join(format_entry(value) for value in row))
    return "\n".join(lines) + "\n"


def write_matrix(matrix: HermitianMatrix, path: Union[str, Path]) -> Path:
    """Write ``matrix`` in the text format; returns the path written.

    Raises:
        ReportIOError: The file cannot be written.
    """
    path = Path(path)
    try:
        path.write_text(format_matrix(matrix), encoding="utf-8")
    except OSError as e:
        raise ReportIOError(f"Cannot write matrix file {path}: {e}") from e
    return path
