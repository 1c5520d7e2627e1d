"""Classical seed code model."""

import math
from dataclasses import dataclass
from typing import Union

from .binmatrix import BinMatrix, Decomposition

Distance = Union[int, float]

# Distance recorded for codes whose kernel has no nonzero element.
INFINITE_DISTANCE = math.inf


def format_distance(d: Distance) -> str:
    """Render a distance, using 'inf' for the infinite sentinel."""
    return "inf" if d == INFINITE_DISTANCE else str(int(d))


@dataclass(frozen=True)
class SeedCode:
    """A classical parity-check matrix with its cached linear-algebra data.

    Args:
        H: The m x n parity-check matrix
        rank: rk(H)
        kernel: Basis of ker H (rows of length n)
        kernel_T: Basis of ker H^T (rows of length m)
        dec_im: Decomposition of F_2^m around im H
        dec_imT: Decomposition of F_2^n around im H^T
        distance: Minimum weight of a nonzero codeword of ker H, or None if not computed
        distance_T: Same for ker H^T
    """
    H: BinMatrix
    rank: int
    kernel: BinMatrix
    kernel_T: BinMatrix
    dec_im: Decomposition
    dec_imT: Decomposition
    distance: Distance = None
    distance_T: Distance = None

    @property
    def m(self) -> int:
        return self.H.rows

    @property
    def n(self) -> int:
        return self.H.cols

    @property
    def k(self) -> int:
        """Dimension of ker H."""
        return self.n - self.rank

    @property
    def k_T(self) -> int:
        """Dimension of ker H^T."""
        return self.m - self.rank

    def transpose(self) -> "SeedCode":
        """The same data viewed from H^T."""
        return SeedCode(
            H=self.H.T,
            rank=self.rank,
            kernel=self.kernel_T,
            kernel_T=self.kernel,
            dec_im=self.dec_imT,
            dec_imT=self.dec_im,
            distance=self.distance_T,
            distance_T=self.distance,
        )

    def describe(self) -> str:
        """Short [n, k, d] label."""
        d = "?" if self.distance is None else format_distance(self.distance)
        return f"[{self.n}, {self.k}, {d}]"
