"""Classical seed codes: construction, exact distances and standard checks."""

import logging

import numpy as np

from ..algebra import f2
from ..models.binmatrix import BinMatrix
from ..models.errors import BudgetExceededError
from ..models.seed_code import INFINITE_DISTANCE, Distance, SeedCode

logger = logging.getLogger(__name__)

MAX_DISTANCE_KERNEL_DIM = 24
MAX_RESAMPLING_ATTEMPTS = 1000


def min_nonzero_weight(basis: BinMatrix) -> Distance:
    """Minimum Hamming weight over the nonzero elements of span(basis).

    Raises:
        BudgetExceededError: If the span dimension exceeds 24
    """
    if basis.rows == 0:
        return INFINITE_DISTANCE
    if basis.rows > MAX_DISTANCE_KERNEL_DIM:
        raise BudgetExceededError(
            f"Kernel dimension {basis.rows} is too large for exact distance "
            f"(limit {MAX_DISTANCE_KERNEL_DIM})"
        )
    best = INFINITE_DISTANCE
    for chunk in f2.iter_span(basis):
        weights = chunk.sum(axis=1, dtype=np.int64)
        weights = weights[weights > 0]
        if weights.size:
            best = min(best, int(weights.min()))
    return best


def build_seed(H: BinMatrix, compute_distance: bool = True) -> SeedCode:
    """Build a seed code and cache everything ReShape needs from it.

    Args:
        H: Parity-check matrix
        compute_distance: Whether to compute d and d^T exhaustively

    Returns:
        The seed code

    Raises:
        ValueError: If H has no rows or no columns
        BudgetExceededError: If a distance is requested for a kernel that is too large
    """
    if H.rows == 0 or H.cols == 0:
        raise ValueError("Parity-check matrix must be nonempty")
    kernel = f2.kernel_basis(H)
    kernel_T = f2.kernel_basis(H.T)
    distance = distance_T = None
    if compute_distance:
        distance = min_nonzero_weight(kernel)
        distance_T = min_nonzero_weight(kernel_T)
    seed = SeedCode(
        H=H,
        rank=H.cols - kernel.rows,
        kernel=kernel,
        kernel_T=kernel_T,
        dec_im=f2.decompose(H),
        dec_imT=f2.decompose(H.T),
        distance=distance,
        distance_T=distance_T,
    )
    logger.debug("Built seed %dx%d: rank %d, d=%s, d^T=%s", H.rows, H.cols, seed.rank, distance, distance_T)
    return seed


def repetition_check(length: int, closed: bool = False) -> BinMatrix:
    """Parity checks of the length-L repetition code.

    Args:
        length: Code length L (at least 2)
        closed: L x L cyclic checks when True, otherwise the (L-1) x L chain

    Raises:
        ValueError: If length < 2
    """
    if length < 2:
        raise ValueError("Repetition code length must be at least 2")
    rows = length if closed else length - 1
    H = np.zeros((rows, length), dtype=np.uint8)
    for i in range(rows):
        H[i, i] = 1
        H[i, (i + 1) % length] = 1
    return BinMatrix.from_array(H)


def hamming_check(degenerate: bool = True) -> BinMatrix:
    """Checks of the [7, 4, 3] Hamming code.

    Column j holds the binary expansion of j + 1. The degenerate version
    appends the sum of the three rows, which makes ker H^T = {0000, 1111}.
    """
    columns = np.arange(1, 8)
    rows = [((columns >> bit) & 1).astype(np.uint8) for bit in range(3)]
    if degenerate:
        rows.append(rows[0] ^ rows[1] ^ rows[2])
    return BinMatrix.from_array(np.vstack(rows))


def random_regular_check(wc: int, wr: int, m: int, n: int, seed: int) -> BinMatrix:
    """Random full-rank check with column weight ``wc`` and row weight ``wr``.

    Column and row sockets are paired by a random permutation; a pairing is
    rejected when it repeats an edge or when the result is rank deficient.

    Args:
        wc: Column weight
        wr: Row weight
        m: Number of rows
        n: Number of columns
        seed: RNG seed; equal seeds give equal matrices

    Raises:
        ValueError: If m * wr != n * wc
        BudgetExceededError: If no valid matrix is found within the attempt limit
    """
    if m * wr != n * wc:
        raise ValueError(f"Socket counts differ: m*wr = {m * wr}, n*wc = {n * wc}")
    rng = np.random.default_rng(seed)
    row_sockets = np.repeat(np.arange(m), wr)
    col_sockets = np.repeat(np.arange(n), wc)
    for attempt in range(1, MAX_RESAMPLING_ATTEMPTS + 1):
        rows = row_sockets[rng.permutation(row_sockets.size)]
        edges = rows * n + col_sockets
        if np.unique(edges).size != edges.size:
            continue
        H = np.zeros((m, n), dtype=np.uint8)
        H[rows, col_sockets] = 1
        candidate = BinMatrix.from_array(H)
        if f2.rank(candidate) == m:
            logger.debug("random (%d,%d) check %dx%d accepted after %d attempts", wc, wr, m, n, attempt)
            return candidate
    raise BudgetExceededError(
        f"No full-rank ({wc},{wr}) check of size {m}x{n} found in {MAX_RESAMPLING_ATTEMPTS} attempts"
    )
