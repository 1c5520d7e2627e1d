"""Quantum operators in reshaped form and decoder results."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Tuple

import numpy as np

from .binmatrix import BinMatrix
from .errors import ContractViolation


class Species(Enum):
    """Pauli type of an operator or of a noise channel."""
    Z = "z"
    X = "x"

    @property
    def other(self) -> "Species":
        return Species.X if self is Species.Z else Species.Z


@dataclass(frozen=True)
class OpPair:
    """A Z- or X-operator on the two qubit grids of a hypergraph product code.

    Args:
        left: n_a x n_b support on the left qubits
        right: m_a x m_b support on the right qubits
        species: Pauli type
    """
    left: BinMatrix
    right: BinMatrix
    species: Species = Species.Z

    def weight(self) -> int:
        """|(L, R)| = |L| + |R|."""
        return self.left.weight() + self.right.weight()

    def is_zero(self) -> bool:
        return self.left.is_zero() and self.right.is_zero()

    def __add__(self, other: "OpPair") -> "OpPair":
        """Product of two operators of the same species (entrywise XOR).

        Raises:
            ContractViolation: If the species differ
            DimensionMismatchError: If the grids differ
        """
        if self.species is not other.species:
            raise ContractViolation(
                f"Cannot combine a {self.species.name}-operator with a {other.species.name}-operator"
            )
        return OpPair(self.left + other.left, self.right + other.right, self.species)

    def dual(self) -> "OpPair":
        """The same operator seen on the dual code: both grids transposed, species swapped."""
        return OpPair(self.left.T, self.right.T, self.species.other)

    def support(self) -> Tuple[Tuple[int, int], ...]:
        """Nonzero (row, col) cells, left grid first then right grid, prefixed by 0/1 for the grid."""
        cells = [(0, int(i), int(j)) for i, j in zip(*np.nonzero(self.left.to_array()))]
        cells += [(1, int(i), int(j)) for i, j in zip(*np.nonzero(self.right.to_array()))]
        return tuple(cells)

    @classmethod
    def zeros(cls, left_shape: Tuple[int, int], right_shape: Tuple[int, int],
              species: Species = Species.Z) -> "OpPair":
        return cls(BinMatrix.zeros(*left_shape), BinMatrix.zeros(*right_shape), species)


@dataclass(frozen=True)
class CanonicalForm:
    """Split of a matrix into a free part and a logical part.

    Args:
        free: Rows (or columns) lying in the relevant image space
        logical: Rows (or columns) lying in the unit-vector complement
    """
    free: BinMatrix
    logical: BinMatrix

    def reconstruct(self) -> BinMatrix:
        return self.free + self.logical


@dataclass(frozen=True)
class OracleCall:
    """One invocation of a classical oracle during a decode.

    Args:
        side: "left" (column of the left logical part) or "right" (row of the right logical part)
        index: Column or row index that was decoded
        received: Vector handed to the oracle
        codeword: Kernel element it returned
    """
    side: str
    index: int
    received: Tuple[int, ...]
    codeword: Tuple[int, ...]


@dataclass(frozen=True)
class DecodeResult:
    """Output of a ReShape decode.

    For X-decoding the left pass runs the oracle of δ_B and the right pass
    the oracle of δ_A^T; the counters keep their pass-based names.

    Args:
        correction: Operator with the requested syndrome
        oracle_calls_a: Oracle calls made by the left pass
        oracle_calls_bT: Oracle calls made by the right pass
        trace: Every oracle call in order
    """
    correction: OpPair
    oracle_calls_a: int
    oracle_calls_bT: int
    trace: Tuple[OracleCall, ...] = field(default=(), repr=False)

    @property
    def total_calls(self) -> int:
        return self.oracle_calls_a + self.oracle_calls_bT
