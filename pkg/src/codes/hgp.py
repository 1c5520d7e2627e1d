"""Hypergraph product codes C(δ_A, δ_B).

Qubits sit on a left n_a x n_b grid followed by a right m_a x m_b grid, each
flattened row-major. A Z-operator (L, R) has X-syndrome δ_A L + R δ_B. The
X side of C(δ_A, δ_B) is the Z side of the dual code C(δ_B, δ_A) with both
grids transposed, so every X operation below delegates to its Z twin.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..algebra import f2
from ..models.binmatrix import BinMatrix, as_vector
from ..models.errors import BudgetExceededError, ContractViolation, DimensionMismatchError
from ..models.operator import OpPair, Species
from ..models.seed_code import INFINITE_DISTANCE, Distance, SeedCode, format_distance

logger = logging.getLogger(__name__)

MAX_EXHAUSTIVE_KERNEL_DIM = 16


def _min_distance(a: Optional[Distance], b: Optional[Distance]) -> Optional[Distance]:
    if a is None or b is None:
        return None
    return min(a, b)


@dataclass(frozen=True)
class HgpCode:
    """A hypergraph product CSS code.

    Args:
        seed_a: Seed code of δ_A (m_a x n_a)
        seed_b: Seed code of δ_B (m_b x n_b)
        H_X: X-stabilizer checks, one row per (i_a, j_b)
        H_Z: Z-stabilizer checks, one row per (j_a, i_b)
        label: Human-readable code identifier
    """
    seed_a: SeedCode
    seed_b: SeedCode
    H_X: BinMatrix
    H_Z: BinMatrix
    label: str = "hgp"

    @property
    def delta_a(self) -> BinMatrix:
        return self.seed_a.H

    @property
    def delta_b(self) -> BinMatrix:
        return self.seed_b.H

    @property
    def left_shape(self) -> Tuple[int, int]:
        return self.seed_a.n, self.seed_b.n

    @property
    def right_shape(self) -> Tuple[int, int]:
        return self.seed_a.m, self.seed_b.m

    @property
    def n(self) -> int:
        return self.seed_a.n * self.seed_b.n + self.seed_a.m * self.seed_b.m

    @property
    def k(self) -> int:
        return self.seed_a.k * self.seed_b.k + self.seed_a.k_T * self.seed_b.k_T

    @property
    def d_x(self) -> Optional[Distance]:
        """min{d_a^T, d_b}, or None when seed distances were not computed."""
        return _min_distance(self.seed_a.distance_T, self.seed_b.distance)

    @property
    def d_z(self) -> Optional[Distance]:
        """min{d_a, d_b^T}, or None when seed distances were not computed."""
        return _min_distance(self.seed_a.distance, self.seed_b.distance_T)

    def parameters(self) -> str:
        """The [[n, k, d_x, d_z]] label."""
        dx = "?" if self.d_x is None else format_distance(self.d_x)
        dz = "?" if self.d_z is None else format_distance(self.d_z)
        return f"[[{self.n}, {self.k}, {dx}, {dz}]]"

    @cached_property
    def dual(self) -> "HgpCode":
        """C(δ_B, δ_A): its Z side is this code's X side, grids transposed."""
        return build_hgp(self.seed_b, self.seed_a, label=f"{self.label}^dual")

    @cached_property
    def left_projector(self) -> BinMatrix:
        """P_B with L @ P_B the part of each row of L outside im δ_B^T."""
        return self.seed_b.dec_imT.projector

    @cached_property
    def right_projector(self) -> BinMatrix:
        """P_A^T with P_A^T @ R the part of each column of R outside im δ_A."""
        return self.seed_a.dec_im.projector.T

    @cached_property
    def x_solver(self) -> f2.LinearSolver:
        """Solver for H_X e = s."""
        return f2.LinearSolver(self.H_X)

    @cached_property
    def z_stabilizer_space(self) -> f2.RowSpace:
        return f2.RowSpace(self.H_Z)

    @cached_property
    def logical_x_matrix(self) -> BinMatrix:
        """Flattened X-logical generators, one per row.

        A Z-operator in ker H_X is a stabilizer iff it commutes with every row.
        """
        return BinMatrix.from_rows([flatten(op) for op in logical_x_basis(self)], self.n)

    @cached_property
    def logical_z_matrix(self) -> BinMatrix:
        return BinMatrix.from_rows([flatten(op) for op in logical_z_basis(self)], self.n)


def build_hgp(seed_a: SeedCode, seed_b: SeedCode, label: str = "hgp") -> HgpCode:
    """Build C(δ_A, δ_B).

    H_X = (δ_A ⊗ I_{n_b} | I_{m_a} ⊗ δ_B^T) and H_Z = (I_{n_a} ⊗ δ_B | δ_A^T ⊗ I_{m_b}).
    """
    da, db = seed_a.H, seed_b.H
    H_X = BinMatrix.hstack([
        BinMatrix.kron(da, BinMatrix.identity(db.cols)),
        BinMatrix.kron(BinMatrix.identity(da.rows), db.T),
    ])
    H_Z = BinMatrix.hstack([
        BinMatrix.kron(BinMatrix.identity(da.cols), db),
        BinMatrix.kron(da.T, BinMatrix.identity(db.rows)),
    ])
    code = HgpCode(seed_a=seed_a, seed_b=seed_b, H_X=H_X, H_Z=H_Z, label=label)
    logger.debug("built %s %s", label, code.parameters())
    return code


def reshape(code: HgpCode, e, species: Species = Species.Z) -> OpPair:
    """Split a flat length-n vector into its (L, R) grids.

    Raises:
        DimensionMismatchError: If len(e) != n
    """
    e = as_vector(e, code.n)
    na, nb = code.left_shape
    split_at = na * nb
    left = BinMatrix.from_array(e[:split_at].reshape(na, nb))
    right = BinMatrix.from_array(e[split_at:].reshape(code.right_shape))
    return OpPair(left, right, species)


def flatten(op: OpPair) -> np.ndarray:
    """Inverse of :func:`reshape`: left grid row-major, then right grid."""
    return np.concatenate([op.left.to_array().reshape(-1), op.right.to_array().reshape(-1)])


def _check_shape(code: HgpCode, op: OpPair, species: Species) -> None:
    if op.species is not species:
        raise ContractViolation(f"Expected a {species.name}-operator, got {op.species.name}")
    if op.left.shape != code.left_shape or op.right.shape != code.right_shape:
        raise DimensionMismatchError(
            f"Operator grids {op.left.shape}/{op.right.shape} do not match "
            f"{code.left_shape}/{code.right_shape}"
        )


def syndrome_z(code: HgpCode, op: OpPair) -> BinMatrix:
    """X-syndrome σ(L, R) = δ_A L + R δ_B of a Z-operator (m_a x n_b).

    Raises:
        ContractViolation: If ``op`` is not a Z-operator
        DimensionMismatchError: If the grids do not match the code
    """
    _check_shape(code, op, Species.Z)
    return code.delta_a @ op.left + op.right @ code.delta_b


def syndrome_x(code: HgpCode, op: OpPair) -> BinMatrix:
    """Z-syndrome L δ_B^T + δ_A^T R of an X-operator (n_a x m_b)."""
    _check_shape(code, op, Species.X)
    return syndrome_z(code.dual, op.dual()).T


def z_stabilizer(code: HgpCode, j_a: int, i_b: int) -> OpPair:
    """Z-stabilizer generator (E δ_B, δ_A E) with E = E_{j_a i_b} of size n_a x m_b.

    Raises:
        ContractViolation: If (j_a, i_b) is outside the n_a x m_b grid
    """
    na, mb = code.seed_a.n, code.seed_b.m
    if not (0 <= j_a < na and 0 <= i_b < mb):
        raise ContractViolation(f"Z-stabilizer index ({j_a}, {i_b}) is outside the {na}x{mb} grid")
    e = BinMatrix.unit(na, mb, j_a, i_b)
    return OpPair(e @ code.delta_b, code.delta_a @ e, Species.Z)


def x_stabilizer(code: HgpCode, i_a: int, j_b: int) -> OpPair:
    """X-stabilizer generator (δ_A^T E, E δ_B^T) with E = E_{i_a j_b} of size m_a x n_b.

    Raises:
        ContractViolation: If (i_a, j_b) is outside the m_a x n_b grid
    """
    ma, nb = code.seed_a.m, code.seed_b.n
    if not (0 <= i_a < ma and 0 <= j_b < nb):
        raise ContractViolation(f"X-stabilizer index ({i_a}, {j_b}) is outside the {ma}x{nb} grid")
    return z_stabilizer(code.dual, j_b, i_a).dual()


def logical_z_left(code: HgpCode) -> List[OpPair]:
    """Left generators (k_a e_{j_b}^T, 0) with e_{j_b} spanning the complement of im δ_B^T."""
    na, nb = code.left_shape
    zero_right = BinMatrix.zeros(*code.right_shape)
    ops = []
    for k_a in code.seed_a.kernel.to_array():
        for j_b in code.seed_b.dec_imT.complement_indices:
            left = np.zeros((na, nb), dtype=np.uint8)
            left[:, j_b] = k_a
            ops.append(OpPair(BinMatrix.from_array(left), zero_right, Species.Z))
    return ops


def logical_z_right(code: HgpCode) -> List[OpPair]:
    """Right generators (0, e_{i_a} k̄_b^T) with e_{i_a} spanning the complement of im δ_A."""
    zero_left = BinMatrix.zeros(*code.left_shape)
    ops = []
    for i_a in code.seed_a.dec_im.complement_indices:
        for k_b in code.seed_b.kernel_T.to_array():
            right = np.zeros(code.right_shape, dtype=np.uint8)
            right[i_a, :] = k_b
            ops.append(OpPair(zero_left, BinMatrix.from_array(right), Species.Z))
    return ops


def logical_z_basis(code: HgpCode) -> List[OpPair]:
    """All k logical Z generators, left ones first."""
    return logical_z_left(code) + logical_z_right(code)


def logical_x_basis(code: HgpCode) -> List[OpPair]:
    """All k logical X generators, obtained from the dual code's Z generators."""
    return [op.dual() for op in logical_z_basis(code.dual)]


def is_stabilizer_z(code: HgpCode, op: OpPair) -> bool:
    """True iff the Z-operator lies in the row span of H_Z."""
    _check_shape(code, op, Species.Z)
    return code.z_stabilizer_space.contains(flatten(op))


def is_stabilizer_x(code: HgpCode, op: OpPair) -> bool:
    """True iff the X-operator lies in the row span of H_X."""
    _check_shape(code, op, Species.X)
    return is_stabilizer_z(code.dual, op.dual())


def homology_equal_z(code: HgpCode, op1: OpPair, op2: OpPair) -> bool:
    """True iff op1 and op2 differ by a Z-stabilizer.

    Raises:
        ContractViolation: If op1 + op2 has a nonzero syndrome
    """
    diff = op1 + op2
    if not syndrome_z(code, diff).is_zero():
        raise ContractViolation("Operators with different syndromes have no common homology class")
    return is_stabilizer_z(code, diff)


def homology_equal_x(code: HgpCode, op1: OpPair, op2: OpPair) -> bool:
    """X-species counterpart of :func:`homology_equal_z`."""
    return homology_equal_z(code.dual, op1.dual(), op2.dual())


def normalizer_basis_z(code: HgpCode) -> BinMatrix:
    """Basis of ker H_X: Z-operators with trivial syndrome."""
    return f2.kernel_basis(code.H_X)


def exhaustive_distance_z(code: HgpCode) -> Distance:
    """Minimum weight of a nontrivial Z-logical, by enumerating ker H_X.

    Raises:
        BudgetExceededError: If dim ker H_X > 16
    """
    basis = normalizer_basis_z(code)
    if basis.rows > MAX_EXHAUSTIVE_KERNEL_DIM:
        raise BudgetExceededError(
            f"ker H_X has dimension {basis.rows}; exhaustive distance is limited to {MAX_EXHAUSTIVE_KERNEL_DIM}"
        )
    logicals = code.logical_x_matrix.to_array().T.astype(np.int64)
    best = INFINITE_DISTANCE
    for chunk in f2.iter_span(basis):
        nontrivial = ((chunk.astype(np.int64) @ logicals) & 1).any(axis=1)
        if nontrivial.any():
            best = min(best, int(chunk[nontrivial].sum(axis=1).min()))
    return best


def exhaustive_distance_x(code: HgpCode) -> Distance:
    """Minimum weight of a nontrivial X-logical."""
    return exhaustive_distance_z(code.dual)


def code_summary(code: HgpCode) -> Dict[str, Any]:
    """JSON-ready description of the code.

    Distances use the string "inf" for the infinite sentinel and null when unknown.
    """
    def distance(d):
        return None if d is None else (format_distance(d) if d == INFINITE_DISTANCE else int(d))

    return {
        "label": code.label,
        "seed_a": {"rows": code.seed_a.m, "cols": code.seed_a.n, "dense": code.delta_a.to_text()},
        "seed_b": {"rows": code.seed_b.m, "cols": code.seed_b.n, "dense": code.delta_b.to_text()},
        "n": code.n,
        "k": code.k,
        "d_x": distance(code.d_x),
        "d_z": distance(code.d_z),
        "x_stabilizers": code.H_X.rows,
        "z_stabilizers": code.H_Z.rows,
        "logical_z_left": code.seed_a.k * code.seed_b.k,
        "logical_z_right": code.seed_a.k_T * code.seed_b.k_T,
    }
