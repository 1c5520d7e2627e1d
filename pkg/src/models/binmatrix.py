"""Bit-packed binary matrices over GF(2)."""

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Tuple

import numpy as np
from scipy.sparse import issparse

from .errors import DimensionMismatchError

WORD_BITS = 64


def words_for(cols: int) -> int:
    """Number of 64-bit words needed to hold ``cols`` bits."""
    return max(1, (cols + WORD_BITS - 1) // WORD_BITS)


def pack_bits(bits: np.ndarray) -> np.ndarray:
    """Pack a 2-D 0/1 array into rows of little-endian uint64 words.

    Args:
        bits: Array of shape (rows, cols) with entries 0 or 1

    Returns:
        Array of shape (rows, words_for(cols)) and dtype uint64
    """
    bits = np.asarray(bits, dtype=np.uint8)
    rows, cols = bits.shape
    n_words = words_for(cols)
    if rows == 0:
        return np.zeros((0, n_words), dtype=np.uint64)
    packed = np.packbits(bits, axis=1, bitorder="little")
    padded = np.zeros((rows, n_words * 8), dtype=np.uint8)
    padded[:, :packed.shape[1]] = packed
    return padded.view("<u8").astype(np.uint64)


def unpack_bits(words: np.ndarray, cols: int) -> np.ndarray:
    """Inverse of :func:`pack_bits`."""
    rows = words.shape[0]
    if rows == 0:
        return np.zeros((0, cols), dtype=np.uint8)
    raw = np.ascontiguousarray(words.astype("<u8")).view(np.uint8).reshape(rows, -1)
    return np.unpackbits(raw, axis=1, count=cols, bitorder="little")


def as_vector(v, length: int = None) -> np.ndarray:
    """Coerce ``v`` to a flat uint8 vector of 0/1 entries.

    Raises:
        DimensionMismatchError: If ``length`` is given and does not match
    """
    vec = np.asarray(v, dtype=np.uint8).reshape(-1) & 1
    if length is not None and vec.size != length:
        raise DimensionMismatchError(f"Expected a vector of length {length}, got {vec.size}")
    return vec


@dataclass(frozen=True, eq=False)
class BinMatrix:
    """Dense binary matrix stored as row-major packed 64-bit words.

    Padding bits past ``cols`` in the last word of each row are always zero,
    so word-wise XOR and equality never see garbage.

    Args:
        rows: Number of rows
        cols: Number of columns
        words: uint64 array of shape (rows, words_for(cols))
    """
    rows: int
    cols: int
    words: np.ndarray = field(repr=False)

    def __post_init__(self):
        """Freeze the payload and check its shape.

        Raises:
            DimensionMismatchError: If the payload does not match rows/cols
        """
        if self.words.shape != (self.rows, words_for(self.cols)):
            raise DimensionMismatchError(
                f"Packed payload {self.words.shape} does not fit a {self.rows}x{self.cols} matrix"
            )
        self.words.flags.writeable = False

    @classmethod
    def from_array(cls, data) -> "BinMatrix":
        """Build from any 2-D array-like (dense or scipy.sparse) of 0/1 entries."""
        if issparse(data):
            data = data.toarray()
        dense = np.asarray(data, dtype=np.int64)
        if dense.ndim == 1:
            dense = dense.reshape(1, -1)
        if dense.ndim != 2:
            raise DimensionMismatchError("A binary matrix must be 2-dimensional")
        bits = (dense & 1).astype(np.uint8)
        return cls(bits.shape[0], bits.shape[1], pack_bits(bits))

    @classmethod
    def from_rows(cls, vectors: Sequence, cols: int) -> "BinMatrix":
        """Stack vectors of length ``cols`` as rows (an empty list gives 0 rows)."""
        if len(vectors) == 0:
            return cls.zeros(0, cols)
        return cls.from_array(np.vstack([as_vector(v, cols) for v in vectors]))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BinMatrix":
        """All-zero matrix."""
        return cls(rows, cols, np.zeros((rows, words_for(cols)), dtype=np.uint64))

    @classmethod
    def identity(cls, n: int) -> "BinMatrix":
        """n x n identity."""
        return cls.from_array(np.eye(n, dtype=np.uint8))

    @classmethod
    def unit(cls, rows: int, cols: int, i: int, j: int) -> "BinMatrix":
        """The matrix E_{ij}: zero except for a single 1 at (i, j)."""
        dense = np.zeros((rows, cols), dtype=np.uint8)
        dense[i, j] = 1
        return cls.from_array(dense)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def to_array(self) -> np.ndarray:
        """Dense uint8 copy."""
        if self.rows == 0:
            return np.zeros((0, self.cols), dtype=np.uint8)
        return unpack_bits(self.words, self.cols)

    @property
    def T(self) -> "BinMatrix":
        return BinMatrix.from_array(self.to_array().T)

    def row(self, i: int) -> np.ndarray:
        """Row ``i`` as a uint8 vector."""
        return unpack_bits(self.words[i:i + 1], self.cols)[0]

    def column(self, j: int) -> np.ndarray:
        """Column ``j`` as a uint8 vector."""
        shift = np.uint64(j % WORD_BITS)
        return ((self.words[:, j // WORD_BITS] >> shift) & np.uint64(1)).astype(np.uint8)

    def __add__(self, other: "BinMatrix") -> "BinMatrix":
        if self.shape != other.shape:
            raise DimensionMismatchError(f"Cannot add {self.shape} and {other.shape} matrices")
        return BinMatrix(self.rows, self.cols, self.words ^ other.words)

    def __matmul__(self, other):
        """Matrix product over GF(2); a 1-D right operand gives a vector."""
        if isinstance(other, BinMatrix):
            return self.matmul(other)
        return self.dot(other)

    def matmul(self, other: "BinMatrix") -> "BinMatrix":
        """Product ``self @ other``: each result row XORs the selected rows of ``other``."""
        if self.cols != other.rows:
            raise DimensionMismatchError(f"Cannot multiply {self.shape} by {other.shape}")
        out = np.zeros((self.rows, words_for(other.cols)), dtype=np.uint64)
        if self.rows == 0:
            return BinMatrix(self.rows, other.cols, out)
        selector = self.to_array().astype(bool)
        for j in np.flatnonzero(selector.any(axis=0)):
            out[selector[:, j]] ^= other.words[j]
        return BinMatrix(self.rows, other.cols, out)

    def dot(self, v) -> np.ndarray:
        """Matrix-vector product ``self @ v`` as a uint8 vector of length ``rows``."""
        packed = pack_bits(as_vector(v, self.cols).reshape(1, -1))[0]
        parity = np.bitwise_count(self.words & packed).sum(axis=1, dtype=np.int64) & 1
        return parity.astype(np.uint8)

    def left_dot(self, v) -> np.ndarray:
        """Vector-matrix product ``v @ self`` as a uint8 vector of length ``cols``."""
        mask = as_vector(v, self.rows).astype(bool)
        if not mask.any():
            return np.zeros(self.cols, dtype=np.uint8)
        combined = np.bitwise_xor.reduce(self.words[mask], axis=0)
        return unpack_bits(combined.reshape(1, -1), self.cols)[0]

    def weight(self) -> int:
        """Hamming weight (number of ones)."""
        return int(np.bitwise_count(self.words).sum())

    def nonzero_rows(self) -> np.ndarray:
        """Indices of rows containing at least one 1."""
        return np.flatnonzero(self.words.any(axis=1))

    def nonzero_columns(self) -> np.ndarray:
        """Indices of columns containing at least one 1."""
        if self.rows == 0:
            return np.zeros(0, dtype=np.int64)
        combined = np.bitwise_or.reduce(self.words, axis=0)
        return np.flatnonzero(unpack_bits(combined.reshape(1, -1), self.cols)[0])

    def is_zero(self) -> bool:
        return not self.words.any()

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinMatrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.words, other.words)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.words.tobytes()))

    def __repr__(self) -> str:
        return f"BinMatrix({self.rows}x{self.cols}, weight={self.weight()})"

    def to_text(self) -> str:
        """Rows as space-separated bits, one per line."""
        return "\n".join(" ".join(str(b) for b in row) for row in self.to_array())

    @staticmethod
    def vstack(blocks: Iterable["BinMatrix"]) -> "BinMatrix":
        blocks = list(blocks)
        cols = {b.cols for b in blocks}
        if len(cols) != 1:
            raise DimensionMismatchError("vstack needs blocks with equal column counts")
        return BinMatrix(sum(b.rows for b in blocks), cols.pop(), np.vstack([b.words for b in blocks]))

    @staticmethod
    def hstack(blocks: Iterable["BinMatrix"]) -> "BinMatrix":
        blocks = list(blocks)
        if len({b.rows for b in blocks}) != 1:
            raise DimensionMismatchError("hstack needs blocks with equal row counts")
        return BinMatrix.from_array(np.hstack([b.to_array() for b in blocks]))

    @staticmethod
    def kron(a: "BinMatrix", b: "BinMatrix") -> "BinMatrix":
        """Kronecker product ``a ⊗ b``."""
        return BinMatrix.from_array(np.kron(a.to_array(), b.to_array()))


@dataclass(frozen=True)
class Decomposition:
    """Splitting of F_2^m into im(A) and a complement spanned by unit vectors.

    Args:
        image_basis: rank x m matrix whose rows span im(A)
        complement_basis: (m - rank) x m matrix of unit-vector rows
        rank: dim im(A)
        complement_indices: Coordinates of the complement unit vectors
        projector: m x m matrix P with ``v @ P`` the complement part of v
    """
    image_basis: BinMatrix
    complement_basis: BinMatrix
    rank: int
    complement_indices: Tuple[int, ...]
    projector: BinMatrix

    @property
    def ambient_dim(self) -> int:
        return self.projector.rows
