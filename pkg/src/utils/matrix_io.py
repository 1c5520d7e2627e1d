"""Reading and writing parity-check matrices and binary vectors.

Two matrix formats are supported:

* dense text: a header line ``m n`` followed by m lines of n space-separated bits;
* alist: the usual LDPC interchange format (header ``n m``, max degrees,
  column and row degree lists, then 1-based column and row adjacency lists,
  zero-padded to the maximum degree).
"""

from pathlib import Path
from typing import List, Tuple, Union

import numpy as np
from scipy.sparse import csr_matrix

from ..models.binmatrix import BinMatrix
from ..models.errors import MatrixFormatError

PathLike = Union[str, Path]


def _read_lines(path: Path) -> List[Tuple[int, List[str]]]:
    """Nonblank lines as (1-based line number, tokens); '#' starts a comment."""
    if not path.exists():
        raise MatrixFormatError("file not found", str(path))
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise MatrixFormatError(f"cannot read file: {e}", str(path)) from e
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            lines.append((number, tokens))
    return lines


def _ints(tokens: List[str], path: Path, line: int) -> List[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise MatrixFormatError(f"expected integers, got {' '.join(tokens)!r}", str(path), line) from None


def parse_dense(path: PathLike) -> BinMatrix:
    """Read the dense text format.

    Raises:
        MatrixFormatError: On a missing file, bad header, wrong row length or a non-binary entry
    """
    path = Path(path)
    lines = _read_lines(path)
    if not lines:
        raise MatrixFormatError("empty matrix file", str(path), 1)
    number, header = lines[0]
    dims = _ints(header, path, number)
    if len(dims) != 2 or min(dims) < 1:
        raise MatrixFormatError("header must be 'm n' with positive m and n", str(path), number)
    m, n = dims
    body = lines[1:]
    if len(body) != m:
        last = body[-1][0] if body else number
        raise MatrixFormatError(f"expected {m} rows, found {len(body)}", str(path), last)
    rows = []
    for number, tokens in body:
        values = _ints(tokens, path, number)
        if len(values) != n:
            raise MatrixFormatError(f"expected {n} entries, found {len(values)}", str(path), number)
        if any(v not in (0, 1) for v in values):
            raise MatrixFormatError("entries must be 0 or 1", str(path), number)
        rows.append(values)
    return BinMatrix.from_array(np.array(rows, dtype=np.uint8))


def parse_alist(path: PathLike) -> BinMatrix:
    """Read an alist file; the column and row lists must describe the same matrix.

    Raises:
        MatrixFormatError: On any structural inconsistency
    """
    path = Path(path)
    lines = _read_lines(path)
    if len(lines) < 4:
        raise MatrixFormatError("alist needs at least four header lines", str(path), lines[-1][0] if lines else 1)
    parsed = [(number, _ints(tokens, path, number)) for number, tokens in lines]
    (l1, dims), (l2, max_degrees), (l3, col_degrees), (l4, row_degrees) = parsed[:4]
    if len(dims) != 2 or min(dims) < 1:
        raise MatrixFormatError("first line must be 'n m'", str(path), l1)
    n, m = dims
    if len(max_degrees) != 2:
        raise MatrixFormatError("second line must hold the two maximum degrees", str(path), l2)
    if len(col_degrees) != n:
        raise MatrixFormatError(f"expected {n} column degrees", str(path), l3)
    if len(row_degrees) != m:
        raise MatrixFormatError(f"expected {m} row degrees", str(path), l4)
    if sum(col_degrees) != sum(row_degrees):
        raise MatrixFormatError("column and row degrees count different edges", str(path), l4)
    if len(parsed) != 4 + n + m:
        raise MatrixFormatError(f"expected {n + m} adjacency lines, found {len(parsed) - 4}", str(path), parsed[-1][0])

    row_index, col_index = [], []
    for j, (number, entries) in enumerate(parsed[4:4 + n]):
        nonzero = [e for e in entries if e != 0]
        if len(nonzero) != col_degrees[j] or any(not 1 <= e <= m for e in nonzero):
            raise MatrixFormatError(f"bad adjacency list for column {j + 1}", str(path), number)
        row_index += [e - 1 for e in nonzero]
        col_index += [j] * len(nonzero)
    sparse = csr_matrix((np.ones(len(row_index), dtype=np.uint8), (row_index, col_index)), shape=(m, n))
    if sparse.nnz and sparse.max() > 1:
        raise MatrixFormatError("repeated entry in column lists", str(path), parsed[4][0])

    for i, (number, entries) in enumerate(parsed[4 + n:]):
        nonzero = sorted(e - 1 for e in entries if e != 0)
        expected = sorted(int(c) for c in sparse.getrow(i).indices)
        if len(nonzero) != row_degrees[i] or nonzero != expected:
            raise MatrixFormatError(f"row {i + 1} disagrees with the column lists", str(path), number)
    return BinMatrix.from_array(sparse)


def read_matrix(path: PathLike, fmt: str = "auto") -> BinMatrix:
    """Read a matrix; ``auto`` picks alist for ``.alist`` files and dense text otherwise.

    Raises:
        MatrixFormatError: On parse failure
        ValueError: On an unknown format name
    """
    path = Path(path)
    if fmt == "auto":
        fmt = "alist" if path.suffix.lower() == ".alist" else "dense"
    if fmt == "dense":
        return parse_dense(path)
    if fmt == "alist":
        return parse_alist(path)
    raise ValueError(f"Unknown matrix format: {fmt}")


def dense_text(m: BinMatrix) -> str:
    return f"{m.rows} {m.cols}\n{m.to_text()}\n"


def alist_text(m: BinMatrix) -> str:
    dense = m.to_array()
    col_lists = [list(np.flatnonzero(dense[:, j]) + 1) for j in range(m.cols)]
    row_lists = [list(np.flatnonzero(dense[i]) + 1) for i in range(m.rows)]
    max_col = max((len(c) for c in col_lists), default=0)
    max_row = max((len(r) for r in row_lists), default=0)

    # an empty list is written as a single 0 so no adjacency line is blank
    def padded(entries, width):
        width = max(width, 1)
        return " ".join(str(int(e)) for e in list(entries) + [0] * (width - len(entries)))

    lines = [
        f"{m.cols} {m.rows}",
        f"{max_col} {max_row}",
        " ".join(str(len(c)) for c in col_lists),
        " ".join(str(len(r)) for r in row_lists),
    ]
    lines += [padded(c, max_col) for c in col_lists]
    lines += [padded(r, max_row) for r in row_lists]
    return "\n".join(lines) + "\n"


def write_matrix(m: BinMatrix, path: PathLike, fmt: str = "auto") -> None:
    """Write a matrix in dense text or alist form (``auto`` follows the file suffix).

    Raises:
        ValueError: On an unknown format name
    """
    path = Path(path)
    if fmt == "auto":
        fmt = "alist" if path.suffix.lower() == ".alist" else "dense"
    if fmt == "dense":
        path.write_text(dense_text(m), encoding="utf-8")
    elif fmt == "alist":
        path.write_text(alist_text(m), encoding="utf-8")
    else:
        raise ValueError(f"Unknown matrix format: {fmt}")


def read_vector(path: PathLike, length: int) -> np.ndarray:
    """Read whitespace-separated bits (over any number of lines).

    Raises:
        MatrixFormatError: On non-binary entries or a length other than ``length``
    """
    path = Path(path)
    values = []
    for number, tokens in _read_lines(path):
        chunk = _ints(tokens, path, number)
        if any(v not in (0, 1) for v in chunk):
            raise MatrixFormatError("entries must be 0 or 1", str(path), number)
        values += chunk
    if len(values) != length:
        raise MatrixFormatError(f"expected {length} bits, found {len(values)}", str(path))
    return np.array(values, dtype=np.uint8)
