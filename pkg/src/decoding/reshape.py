"""ReShape decoding for hypergraph product codes.

A Z-operator (L, R) is split row by row (L) and column by column (R) into a
free part, which lies in im δ_B^T (resp. im δ_A) and can be removed with
stabilizers, and a logical part supported on unit vectors of the complement.
Each nonzero column of the left logical part is decoded with the oracle of
δ_A and each nonzero row of the right logical part with the oracle of δ_B^T;
the returned codewords are added back, which never changes the syndrome.
"""

import logging
from typing import List, Tuple

import numpy as np

from ..codes.hgp import HgpCode, reshape, syndrome_z
from ..codes.oracles import DecoderSuite, MwDecoder
from ..models.binmatrix import BinMatrix
from ..models.errors import ContractViolation, DimensionMismatchError, InconsistentSyndromeError
from ..models.operator import CanonicalForm, DecodeResult, OpPair, OracleCall, Species

logger = logging.getLogger(__name__)


def canonical_left(code: HgpCode, L: BinMatrix) -> CanonicalForm:
    """Split every row of L into its im δ_B^T part and its complement part.

    Raises:
        DimensionMismatchError: If L is not n_a x n_b
    """
    if L.shape != code.left_shape:
        raise DimensionMismatchError(f"Left grid must be {code.left_shape}, got {L.shape}")
    logical = L @ code.left_projector
    return CanonicalForm(free=L + logical, logical=logical)


def canonical_right(code: HgpCode, R: BinMatrix) -> CanonicalForm:
    """Split every column of R into its im δ_A part and its complement part.

    Raises:
        DimensionMismatchError: If R is not m_a x m_b
    """
    if R.shape != code.right_shape:
        raise DimensionMismatchError(f"Right grid must be {code.right_shape}, got {R.shape}")
    logical = code.right_projector @ R
    return CanonicalForm(free=R + logical, logical=logical)


def row_log(code: HgpCode, L: BinMatrix) -> Tuple[int, ...]:
    """Indices of the rows of L outside im δ_B^T."""
    return tuple(int(i) for i in canonical_left(code, L).logical.nonzero_rows())


def col_log(code: HgpCode, R: BinMatrix) -> Tuple[int, ...]:
    """Indices of the columns of R outside im δ_A."""
    return tuple(int(j) for j in canonical_right(code, R).logical.nonzero_columns())


def wt_rc(op: OpPair) -> Tuple[int, int]:
    """Row-column weight: (#nonzero rows of L, #nonzero columns of R)."""
    return len(op.left.nonzero_rows()), len(op.right.nonzero_columns())


def wt_rc_log(code: HgpCode, op: OpPair) -> Tuple[int, int]:
    """Logical row-column weight; constant on each homology class."""
    return len(row_log(code, op.left)), len(col_log(code, op.right))


def find_valid_solution(code: HgpCode, S: BinMatrix) -> OpPair:
    """Some Z-operator whose syndrome is S (free variables set to zero).

    Raises:
        DimensionMismatchError: If S is not m_a x n_b
        InconsistentSyndromeError: If S is not the syndrome of any operator
    """
    expected = (code.seed_a.m, code.seed_b.n)
    if S.shape != expected:
        raise DimensionMismatchError(f"Syndrome must be {expected}, got {S.shape}")
    solution = code.x_solver.solve(S.to_array().reshape(-1))
    if solution is None:
        raise InconsistentSyndromeError("inconsistent syndrome: not in the image of H_X")
    return reshape(code, solution)


def find_valid_solution_x(code: HgpCode, S: BinMatrix) -> OpPair:
    """Some X-operator whose syndrome is S (n_a x m_b)."""
    return find_valid_solution(code.dual, S.T).dual()


def _decode_lines(logical: np.ndarray, oracle: MwDecoder, side: str) -> Tuple[np.ndarray, List[OracleCall]]:
    """Run the oracle on every nonzero row of ``logical``; returns the codeword rows."""
    codewords = np.zeros_like(logical)
    trace = []
    for index in np.flatnonzero(logical.any(axis=1)):
        received = logical[index]
        codeword = oracle.nearest_codeword(received)
        codewords[index] = codeword
        trace.append(OracleCall(side, int(index), tuple(int(b) for b in received),
                                tuple(int(b) for b in codeword)))
        logger.debug("%s line %d: %s -> %s", side, index, received, codeword)
    return codewords, trace


def decode_z(code: HgpCode, D_a: MwDecoder, D_bT: MwDecoder, S: BinMatrix, start: OpPair) -> DecodeResult:
    """ReShape a valid Z-operator into a correction for syndrome S.

    Args:
        code: The hypergraph product code
        D_a: Exact oracle for δ_A
        D_bT: Exact oracle for δ_B^T
        S: X-syndrome (m_a x n_b)
        start: Any Z-operator with syndrome S

    Returns:
        The correction, which always has syndrome S, with per-pass oracle counts

    Raises:
        ContractViolation: If start does not have syndrome S or an oracle belongs to another code
    """
    if D_a.code.H != code.delta_a or D_bT.code.H != code.delta_b.T:
        raise ContractViolation("Oracles must decode δ_A and δ_B^T of this code")
    if syndrome_z(code, start) != S:
        raise ContractViolation("Start operator does not have the requested syndrome")

    left = canonical_left(code, start.left)
    rho_left, left_trace = _decode_lines(left.logical.to_array().T, D_a, "left")
    new_left = start.left + BinMatrix.from_array(rho_left.T)

    right = canonical_right(code, start.right)
    rho_right, right_trace = _decode_lines(right.logical.to_array(), D_bT, "right")
    new_right = start.right + BinMatrix.from_array(rho_right)

    return DecodeResult(
        correction=OpPair(new_left, new_right, Species.Z),
        oracle_calls_a=len(left_trace),
        oracle_calls_bT=len(right_trace),
        trace=tuple(left_trace + right_trace),
    )


def decode_x(code: HgpCode, D_aT: MwDecoder, D_b: MwDecoder, S: BinMatrix, start: OpPair) -> DecodeResult:
    """ReShape for X-errors: Z-decoding on the dual code with transposed grids.

    Args:
        code: The hypergraph product code
        D_aT: Exact oracle for δ_A^T
        D_b: Exact oracle for δ_B
        S: Z-syndrome (n_a x m_b)
        start: Any X-operator with syndrome S

    Raises:
        ContractViolation: If start is not an X-operator or has the wrong syndrome
    """
    if start.species is not Species.X:
        raise ContractViolation(f"Expected an X-operator, got {start.species.name}")
    result = decode_z(code.dual, D_b, D_aT, S.T, start.dual())
    return DecodeResult(
        correction=result.correction.dual(),
        oracle_calls_a=result.oracle_calls_a,
        oracle_calls_bT=result.oracle_calls_bT,
        trace=result.trace,
    )


def decode_syndrome(code: HgpCode, suite: DecoderSuite, S: BinMatrix, species: Species = Species.Z) -> DecodeResult:
    """Find a valid start for S and ReShape it with the matching pair of oracles.

    Raises:
        InconsistentSyndromeError: If S is not a syndrome of the code
    """
    if species is Species.Z:
        return decode_z(code, suite.a, suite.b_t, S, find_valid_solution(code, S))
    return decode_x(code, suite.a_t, suite.b, S, find_valid_solution_x(code, S))


def call_bounds(code: HgpCode, species: Species = Species.Z) -> Tuple[int, int]:
    """Per-pass oracle call limits: nonzero logical columns and rows cannot exceed these."""
    if species is Species.Z:
        return code.seed_b.k, code.seed_a.k_T
    return code.seed_a.k, code.seed_b.k_T
