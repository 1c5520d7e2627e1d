"""Exact minimum-weight classical decoders (the oracles ReShape consumes).

Every oracle returns the kernel element k = y + e where e is the canonical
coset leader of y: the first vector of the coset ordered by Hamming weight
and then by its sorted support compared lexicographically. The three
realisations below therefore agree on every input.
"""

import logging
import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Optional, Tuple

import numpy as np

from ..algebra import f2
from ..models.binmatrix import as_vector
from ..models.errors import BudgetExceededError
from ..models.seed_code import SeedCode
from .classical import build_seed, repetition_check

logger = logging.getLogger(__name__)

MAX_TABLE_RANK = 24
MAX_KERNEL_SEARCH_DIM = 16


def _bits_to_int(v: np.ndarray) -> int:
    return int.from_bytes(np.packbits(v, bitorder="little").tobytes(), "little")


class MwDecoder(ABC):
    """Nearest-codeword oracle for a fixed parity-check matrix.

    The call counter is the only mutable state and is guarded by a lock so
    one decoder may be shared between threads.

    Args:
        code: The classical code being decoded
    """

    def __init__(self, code: SeedCode):
        self.code = code
        self._calls = 0
        self._lock = threading.Lock()

    @property
    def calls(self) -> int:
        """Number of :meth:`nearest_codeword` invocations so far."""
        return self._calls

    def reset_calls(self) -> None:
        with self._lock:
            self._calls = 0

    def nearest_codeword(self, y) -> np.ndarray:
        """Return k in ker H minimising |k + y| (canonical tie rule).

        Args:
            y: Received word of length n

        Returns:
            Kernel element as a uint8 vector

        Raises:
            DimensionMismatchError: If len(y) != n
        """
        y = as_vector(y, self.code.n)
        with self._lock:
            self._calls += 1
        k = self._nearest(y)
        logger.debug("%s: %s -> %s", type(self).__name__, y, k)
        return k

    @abstractmethod
    def _nearest(self, y: np.ndarray) -> np.ndarray:
        """Oracle body; ``y`` is already validated."""

    def __getstate__(self):
        state = self.__dict__.copy()
        del state["_lock"]
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._lock = threading.Lock()


class CosetLeaderDecoder(MwDecoder):
    """Table of canonical coset leaders indexed by syndrome.

    Error patterns are enumerated by increasing weight in combination order
    and the first pattern reaching a syndrome becomes its leader.

    Raises:
        BudgetExceededError: If rank(H) > 24
    """

    def __init__(self, code: SeedCode):
        super().__init__(code)
        if code.rank > MAX_TABLE_RANK:
            raise BudgetExceededError(
                f"Coset-leader table needs 2^{code.rank} entries (rank limit {MAX_TABLE_RANK})"
            )
        self._column_keys = [_bits_to_int(code.H.column(j)) for j in range(code.n)]
        self.table: Dict[int, Tuple[int, ...]] = self._build_table()
        logger.debug("coset-leader table for %dx%d check: %d syndromes", code.m, code.n, len(self.table))

    def _build_table(self) -> Dict[int, Tuple[int, ...]]:
        target = 1 << self.code.rank
        table: Dict[int, Tuple[int, ...]] = {0: ()}
        for weight in range(1, self.code.n + 1):
            if len(table) == target:
                break
            for support in combinations(range(self.code.n), weight):
                key = 0
                for j in support:
                    key ^= self._column_keys[j]
                if key not in table:
                    table[key] = support
                    if len(table) == target:
                        break
        return table

    def syndrome_key(self, y: np.ndarray) -> int:
        return _bits_to_int(self.code.H.dot(y))

    def leader(self, syndrome) -> Optional[np.ndarray]:
        """Minimum-weight error with the given syndrome, or None outside im H."""
        support = self.table.get(_bits_to_int(as_vector(syndrome, self.code.m)))
        if support is None:
            return None
        e = np.zeros(self.code.n, dtype=np.uint8)
        e[list(support)] = 1
        return e

    def _nearest(self, y: np.ndarray) -> np.ndarray:
        k = y.copy()
        k[list(self.table[self.syndrome_key(y)])] ^= 1
        return k


class RepetitionDecoder(MwDecoder):
    """Majority vote for any check whose kernel is {0, 1...1}.

    On a tie the canonical leader is the residual containing coordinate 0,
    so the decoder returns 0 exactly when y[0] == 1.

    Raises:
        ValueError: If ker H is not {0, 1...1}
    """

    def __init__(self, code: SeedCode):
        super().__init__(code)
        if not self.accepts(code):
            raise ValueError("Repetition decoder needs a code whose only nonzero codeword is all-ones")

    @staticmethod
    def accepts(code: SeedCode) -> bool:
        return code.kernel.rows == 1 and code.kernel.weight() == code.n

    def _nearest(self, y: np.ndarray) -> np.ndarray:
        n = self.code.n
        ones = int(y.sum())
        if 2 * ones < n or (2 * ones == n and y[0] == 1):
            return np.zeros(n, dtype=np.uint8)
        return np.ones(n, dtype=np.uint8)


class KernelSearchDecoder(MwDecoder):
    """Brute force over every codeword; meant for small kernels.

    Raises:
        BudgetExceededError: If dim ker H > 16
    """

    def __init__(self, code: SeedCode):
        super().__init__(code)
        if code.k > MAX_KERNEL_SEARCH_DIM:
            raise BudgetExceededError(
                f"Kernel search over 2^{code.k} codewords exceeds the limit of 2^{MAX_KERNEL_SEARCH_DIM}"
            )
        self.codewords = f2.span_elements(code.kernel) if code.k else np.zeros((1, code.n), dtype=np.uint8)

    def _nearest(self, y: np.ndarray) -> np.ndarray:
        residuals = self.codewords ^ y
        weights = residuals.sum(axis=1, dtype=np.int64)
        best = np.flatnonzero(weights == weights.min())
        if best.size > 1:
            chosen = min(best, key=lambda i: tuple(np.flatnonzero(residuals[i])))
        else:
            chosen = best[0]
        return self.codewords[chosen].copy()


def coset_leader_table(code: SeedCode) -> CosetLeaderDecoder:
    """Table-backed exact oracle for ``code``."""
    return CosetLeaderDecoder(code)


def repetition_decoder(length: int, closed: bool = False) -> RepetitionDecoder:
    """Analytic oracle for the length-L repetition code.

    Raises:
        ValueError: If length < 2
    """
    return RepetitionDecoder(build_seed(repetition_check(length, closed), compute_distance=False))


def oracle_for(code: SeedCode) -> MwDecoder:
    """Pick the cheapest exact oracle for ``code``.

    Raises:
        BudgetExceededError: If neither kernel search nor a table fits
    """
    if RepetitionDecoder.accepts(code):
        return RepetitionDecoder(code)
    if code.k <= min(MAX_KERNEL_SEARCH_DIM, code.rank):
        return KernelSearchDecoder(code)
    return CosetLeaderDecoder(code)


@dataclass
class DecoderSuite:
    """The four oracles of a hypergraph product code.

    Args:
        a: Oracle for δ_A
        a_t: Oracle for δ_A^T
        b: Oracle for δ_B
        b_t: Oracle for δ_B^T
    """
    a: MwDecoder
    a_t: MwDecoder
    b: MwDecoder
    b_t: MwDecoder

    def calls(self) -> Dict[str, int]:
        return {"a": self.a.calls, "a_t": self.a_t.calls, "b": self.b.calls, "b_t": self.b_t.calls}

    def reset_calls(self) -> None:
        for decoder in (self.a, self.a_t, self.b, self.b_t):
            decoder.reset_calls()


def build_decoder_suite(seed_a: SeedCode, seed_b: SeedCode) -> DecoderSuite:
    """Build all four oracles for the product of ``seed_a`` and ``seed_b``."""
    return DecoderSuite(
        a=oracle_for(seed_a),
        a_t=oracle_for(seed_a.transpose()),
        b=oracle_for(seed_b),
        b_t=oracle_for(seed_b.transpose()),
    )
