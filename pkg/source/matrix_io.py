"""Reader and writer of the "mat v1" text format.

A document is a sequence of lines. Lines starting with ``#`` are comments;
``# labels: a b c`` names the rows. The first other line holds the order n,
followed by n lines of n integers separated by single spaces.
"""
from dataclasses import dataclass
from pathlib import Path
from typing import List
from typing import Optional
from typing import Union

import numpy as np

from .errors import MatrixFormatError
from .matrices import IntMatrix
from .matrices import as_binary
from .matrices import as_int_matrix

_LABELS = "# labels:"


@dataclass
class MatrixDocument:
    matrix: IntMatrix
    labels: Optional[List[str]] = None
    comments: Optional[List[str]] = None


def parse_matrix(text: str, binary: bool = False) -> MatrixDocument:
    """Parse a "mat v1" document.

    Args:
        text: The document.
        binary: Reject every token other than 0 and 1.

    Returns:
        The matrix together with its labels and free comment lines.
    """
    labels = None
    comments = []
    body = []
    for number, line in enumerate(text.splitlines(), start=1):
        if line.startswith("#"):
            if line.startswith(_LABELS):
                labels = line[len(_LABELS):].split()
            else:
                comments.append(line[1:].strip())
            continue
        body.append((number, line.rstrip("\r")))

    if not body:
        raise MatrixFormatError("missing order line")
    number, first = body[0]
    try:
        n = int(first.strip())
    except ValueError:
        raise MatrixFormatError(f"line {number}: expected the order, got {first!r}") from None
    if n < 1:
        raise MatrixFormatError(f"line {number}: order must be positive, got {n}")

    rows = body[1:]
    # tolerate one blank line at the end
    if len(rows) == n + 1 and rows[-1][1] == "":
        rows = rows[:-1]
    if len(rows) != n:
        raise MatrixFormatError(f"expected {n} rows, got {len(rows)}")

    entries = []
    for number, line in rows:
        tokens = line.split(" ")
        if len(tokens) != n or "" in tokens:
            raise MatrixFormatError(f"line {number}: expected {n} entries separated by single spaces")
        try:
            values = [int(token) for token in tokens]
        except ValueError:
            raise MatrixFormatError(f"line {number}: non-integer entry") from None
        if binary and any(v not in (0, 1) for v in values):
            raise MatrixFormatError(f"line {number}: entries must be 0 or 1")
        entries.append(values)

    if labels is not None and len(labels) != n:
        raise MatrixFormatError(f"{len(labels)} labels for a matrix of order {n}")

    matrix = np.array(entries, dtype=np.int64)
    return MatrixDocument(matrix=matrix, labels=labels, comments=comments or None)


def format_matrix(A: IntMatrix, labels: List[str] = None, comments: List[str] = None) -> str:
    """Render a matrix as a "mat v1" document ending in a newline."""
    A = as_int_matrix(A)
    lines = [f"# {comment}" for comment in comments or []]
    if labels is not None:
        if len(labels) != A.shape[0]:
            raise MatrixFormatError(f"{len(labels)} labels for a matrix of order {A.shape[0]}")
        lines.append(f"{_LABELS} {' '.join(labels)}")
    lines.append(str(A.shape[0]))
    lines.extend(" ".join(str(int(v)) for v in row) for row in A)
    return "\n".join(lines) + "\n"


def read_matrix(path: Union[str, Path], binary: bool = False) -> MatrixDocument:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise MatrixFormatError(f"cannot read {path}: {e}") from None
    document = parse_matrix(text, binary=binary)
    if binary:
        document.matrix = as_binary(document.matrix)
    return document


def write_matrix(path: Union[str, Path], A: IntMatrix, labels: List[str] = None, comments: List[str] = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_matrix(A, labels, comments), encoding="utf-8")
    return path
