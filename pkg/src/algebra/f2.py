"""Dense GF(2) linear algebra on bit-packed matrices.

Every elimination pivots on the leftmost column first and, within a column,
on the topmost available row, so solutions and bases are reproducible.
"""

import logging
from typing import Iterator, List, Optional, Tuple

import numpy as np

from ..models.binmatrix import BinMatrix, Decomposition, WORD_BITS, as_vector, pack_bits, unpack_bits
from ..models.errors import BudgetExceededError, DimensionMismatchError

logger = logging.getLogger(__name__)

_ONE = np.uint64(1)


def _column_bits(words: np.ndarray, col: int) -> np.ndarray:
    return (words[:, col // WORD_BITS] >> np.uint64(col % WORD_BITS)) & _ONE


def _row_reduce(words: np.ndarray, n_cols: int) -> List[int]:
    """Gauss-Jordan elimination in place over the first ``n_cols`` columns.

    Extra columns beyond ``n_cols`` (an augmented block) are carried along.

    Returns:
        Pivot columns, one per nonzero row of the reduced matrix
    """
    pivots: List[int] = []
    n_rows = words.shape[0]
    r = 0
    for col in range(n_cols):
        if r == n_rows:
            break
        candidates = np.flatnonzero(_column_bits(words[r:], col))
        if candidates.size == 0:
            continue
        p = r + int(candidates[0])
        if p != r:
            words[[r, p]] = words[[p, r]]
        others = np.flatnonzero(_column_bits(words, col))
        others = others[others != r]
        if others.size:
            words[others] ^= words[r]
        pivots.append(col)
        r += 1
    return pivots


def row_echelon(m: BinMatrix) -> Tuple[BinMatrix, List[int]]:
    """Reduced row echelon form of ``m`` and its pivot columns."""
    words = m.words.copy()
    pivots = _row_reduce(words, m.cols)
    return BinMatrix(m.rows, m.cols, words), pivots


def rank(m: BinMatrix) -> int:
    """Rank over GF(2)."""
    return len(row_echelon(m)[1])


def kernel_basis(a: BinMatrix) -> BinMatrix:
    """Basis of ker(a) as the rows of a (cols - rank) x cols matrix."""
    reduced, pivots = row_echelon(a)
    dense = reduced.to_array()
    pivot_set = set(pivots)
    free = [c for c in range(a.cols) if c not in pivot_set]
    basis = np.zeros((len(free), a.cols), dtype=np.uint8)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, p in enumerate(pivots):
            if dense[i, f]:
                basis[t, p] = 1
    if not free:
        return BinMatrix.zeros(0, a.cols)
    return BinMatrix.from_array(basis)


def image_basis(a: BinMatrix) -> BinMatrix:
    """Basis of im(a) (the column space) as rows of length ``a.rows``."""
    reduced, pivots = row_echelon(a.T)
    if not pivots:
        return BinMatrix.zeros(0, a.rows)
    return BinMatrix(len(pivots), a.rows, reduced.words[:len(pivots)].copy())


class LinearSolver:
    """Precomputed elimination for repeated solves of ``A x = b``.

    Stores T with T·A in reduced echelon form, so each solve is one packed
    matrix-vector product. Free variables are set to zero.

    Args:
        a: The m x n coefficient matrix
    """

    def __init__(self, a: BinMatrix):
        self.a = a
        augmented = BinMatrix.hstack([a, BinMatrix.identity(a.rows)]) if a.cols else BinMatrix.identity(a.rows)
        words = augmented.words.copy()
        self.pivots = _row_reduce(words, a.cols)
        self.rank = len(self.pivots)
        dense = unpack_bits(words, a.cols + a.rows)
        self.transform = BinMatrix.from_array(dense[:, a.cols:])
        self._pivot_index = np.asarray(self.pivots, dtype=np.int64)

    def solve(self, b) -> Optional[np.ndarray]:
        """Return some x with A·x = b, or None when b is not in im(A).

        Raises:
            DimensionMismatchError: If len(b) != A.rows
        """
        b = as_vector(b, self.a.rows)
        c = self.transform.dot(b)
        if c[self.rank:].any():
            return None
        x = np.zeros(self.a.cols, dtype=np.uint8)
        x[self._pivot_index] = c[:self.rank]
        return x


def solve(a: BinMatrix, b) -> Optional[np.ndarray]:
    """Solve A·x = b over GF(2); None when no solution exists."""
    return LinearSolver(a).solve(b)


def inverse(m: BinMatrix) -> BinMatrix:
    """Inverse of a square invertible matrix.

    Raises:
        DimensionMismatchError: If ``m`` is not square
        ValueError: If ``m`` is singular
    """
    if m.rows != m.cols:
        raise DimensionMismatchError(f"Only square matrices have inverses, got {m.shape}")
    solver = LinearSolver(m)
    if solver.rank != m.rows:
        raise ValueError("Matrix is singular over GF(2)")
    return solver.transform


class RowSpace:
    """Membership oracle for the row space of a fixed matrix."""

    def __init__(self, m: BinMatrix):
        reduced, pivots = row_echelon(m)
        self.cols = m.cols
        self.rank = len(pivots)
        self.basis = BinMatrix(self.rank, m.cols, reduced.words[:self.rank].copy())
        self._pivot_index = np.asarray(pivots, dtype=np.int64)

    def contains(self, v) -> bool:
        """True iff ``v`` is a combination of the rows.

        In reduced echelon form the only candidate combination takes the rows
        whose pivot coordinate is set in ``v``.
        """
        v = as_vector(v, self.cols)
        if self.rank == 0:
            return not v.any()
        candidate = self.basis.left_dot(v[self._pivot_index])
        return bool(np.array_equal(candidate, v))


def in_row_span(m: BinMatrix, v) -> bool:
    """True iff ``v`` lies in the row space of ``m``."""
    return RowSpace(m).contains(v)


class _IntEchelon:
    """Incremental reduced basis over Python-int bitsets (bit i = coordinate i)."""

    def __init__(self):
        self.rows = {}

    def reduce(self, x: int) -> int:
        for pivot, row in self.rows.items():
            if (x >> pivot) & 1:
                x ^= row
        return x

    def add(self, x: int) -> bool:
        x = self.reduce(x)
        if x == 0:
            return False
        pivot = (x & -x).bit_length() - 1
        for p, row in self.rows.items():
            if (row >> pivot) & 1:
                self.rows[p] = row ^ x
        self.rows[pivot] = x
        return True


def _to_int(v: np.ndarray) -> int:
    return int.from_bytes(np.packbits(v, bitorder="little").tobytes(), "little")


def decompose(a: BinMatrix) -> Decomposition:
    """Split F_2^m (m = a.rows) as im(a) plus a span of unit vectors.

    A basis of im(a) is stacked over the m x m identity and the pivot rows
    are kept greedily from the top, which yields the image basis followed by
    the unit vectors that complete it.
    """
    m = a.rows
    basis = image_basis(a)
    echelon = _IntEchelon()
    for v in basis.to_array():
        echelon.add(_to_int(v))
    complement = []
    for i in range(m):
        if len(echelon.rows) == m:
            break
        if echelon.add(1 << i):
            complement.append(i)
    complement_rows = np.zeros((len(complement), m), dtype=np.uint8)
    complement_rows[np.arange(len(complement)), complement] = 1
    complement_basis = BinMatrix.from_array(complement_rows) if complement else BinMatrix.zeros(0, m)
    full = BinMatrix.vstack([basis, complement_basis])
    coefficients = inverse(full).to_array()
    # v = c·full with c = v·full^-1; the complement part is c[rk:]·F
    projector = BinMatrix.from_array(coefficients[:, basis.rows:]) @ complement_basis
    logger.debug("decompose: ambient %d, rank %d, complement %s", m, basis.rows, complement)
    return Decomposition(
        image_basis=basis,
        complement_basis=complement_basis,
        rank=basis.rows,
        complement_indices=tuple(complement),
        projector=projector,
    )


def split(v, dec: Decomposition) -> Tuple[np.ndarray, np.ndarray]:
    """Write ``v`` as (image part, complement part) under ``dec``.

    Raises:
        DimensionMismatchError: If len(v) differs from the ambient dimension
    """
    v = as_vector(v, dec.ambient_dim)
    mu_part = dec.projector.left_dot(v)
    return v ^ mu_part, mu_part


def iter_span(basis: BinMatrix, chunk_bits: int = 14) -> Iterator[np.ndarray]:
    """Yield every element of span(rows of ``basis``) in chunks of 2**chunk_bits.

    Element with index t is the combination selected by the bits of t.
    """
    k = basis.rows
    dense = basis.to_array().astype(np.int64)
    total = 1 << k
    step = 1 << min(chunk_bits, k)
    shifts = np.arange(k, dtype=np.int64)
    for start in range(0, total, step):
        index = np.arange(start, min(start + step, total), dtype=np.int64)
        coefficients = (index[:, None] >> shifts) & 1
        yield ((coefficients @ dense) & 1).astype(np.uint8)


def span_elements(basis: BinMatrix, budget: int = 1 << 20) -> np.ndarray:
    """All 2**k elements of the row span as a (2**k) x n array.

    Raises:
        BudgetExceededError: If 2**k exceeds ``budget``
    """
    if (1 << basis.rows) > budget:
        raise BudgetExceededError(
            f"Span of dimension {basis.rows} has {1 << basis.rows} elements, budget is {budget}"
        )
    return np.vstack(list(iter_span(basis)))
