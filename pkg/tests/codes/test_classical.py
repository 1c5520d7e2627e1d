"""Tests for classical seed codes."""

import math

import numpy as np
import pytest

from src.algebra import f2
from src.codes.classical import (
    build_seed,
    hamming_check,
    min_nonzero_weight,
    random_regular_check,
    repetition_check,
)
from src.models.binmatrix import BinMatrix
from src.models.errors import BudgetExceededError
from src.models.seed_code import INFINITE_DISTANCE, format_distance


class TestRepetitionCheck:
    """Test cases for repetition code checks."""

    def test_open_chain(self):
        """Test the (L-1) x L chain."""
        assert np.array_equal(repetition_check(3).to_array(), [[1, 1, 0], [0, 1, 1]])

    def test_closed_cycle(self):
        """Test the L x L cycle."""
        assert np.array_equal(repetition_check(3, closed=True).to_array(),
                              [[1, 1, 0], [0, 1, 1], [1, 0, 1]])

    def test_too_short(self):
        """Test that length 1 is rejected."""
        with pytest.raises(ValueError, match="at least 2"):
            repetition_check(1)


class TestHammingCheck:
    """Test cases for Hamming checks."""

    def test_columns_are_binary_expansions(self):
        """Test that column j encodes j + 1."""
        dense = hamming_check(degenerate=False).to_array()
        for j in range(7):
            assert sum(int(dense[bit, j]) << bit for bit in range(3)) == j + 1

    def test_degenerate_row(self):
        """Test that the fourth row is the sum of the first three."""
        dense = hamming_check().to_array()
        assert dense.shape == (4, 7)
        assert np.array_equal(dense[3], dense[0] ^ dense[1] ^ dense[2])


class TestBuildSeed:
    """Test cases for seed code construction."""

    def test_open_repetition(self):
        """Test [3, 1, 3] with trivial transpose kernel."""
        seed = build_seed(repetition_check(3))
        assert (seed.m, seed.n, seed.rank) == (2, 3, 2)
        assert seed.k == 1 and seed.distance == 3
        assert seed.k_T == 0 and seed.distance_T == INFINITE_DISTANCE

    def test_closed_repetition(self):
        """Test that the cyclic check is self-transpose in its parameters."""
        seed = build_seed(repetition_check(3, closed=True))
        assert seed.rank == 2
        assert (seed.k, seed.distance) == (1, 3)
        assert (seed.k_T, seed.distance_T) == (1, 3)

    def test_degenerate_hamming(self):
        """Test [7, 4, 3] with ker H^T = {0000, 1111}."""
        seed = build_seed(hamming_check())
        assert seed.rank == 3
        assert (seed.k, seed.distance) == (4, 3)
        assert (seed.k_T, seed.distance_T) == (1, 4)
        assert seed.describe() == "[7, 4, 3]"

    def test_cached_data_is_consistent(self):
        """Test that kernels are annihilated and decompositions have the right size."""
        seed = build_seed(hamming_check())
        assert (seed.H @ seed.kernel.T).is_zero()
        assert (seed.H.T @ seed.kernel_T.T).is_zero()
        assert len(seed.dec_im.complement_indices) == seed.k_T
        assert len(seed.dec_imT.complement_indices) == seed.k

    def test_transpose(self):
        """Test that transposing swaps every pair of cached fields."""
        seed = build_seed(repetition_check(3))
        transposed = seed.transpose()
        assert transposed.H == seed.H.T
        assert (transposed.k, transposed.k_T) == (seed.k_T, seed.k)
        assert transposed.distance == INFINITE_DISTANCE
        assert transposed.transpose() == seed

    def test_empty_matrix(self):
        """Test that an empty check is rejected."""
        with pytest.raises(ValueError, match="nonempty"):
            build_seed(BinMatrix.zeros(0, 3))

    def test_distance_budget(self):
        """Test that an oversized kernel refuses exact distance but builds without it."""
        H = BinMatrix.zeros(1, 26)
        with pytest.raises(BudgetExceededError, match="too large for exact distance"):
            build_seed(H)
        seed = build_seed(H, compute_distance=False)
        assert seed.k == 26
        assert seed.distance is None


class TestMinWeight:
    """Test cases for exhaustive minimum weight."""

    def test_empty_basis(self):
        """Test that an empty span has infinite distance."""
        assert min_nonzero_weight(BinMatrix.zeros(0, 5)) == INFINITE_DISTANCE

    def test_format_distance(self):
        """Test rendering of finite and infinite distances."""
        assert format_distance(math.inf) == "inf"
        assert format_distance(3) == "3"


class TestRandomRegular:
    """Test cases for random (wc, wr)-regular checks."""

    def test_weights_and_rank(self):
        """Test column weight 3, row weight 4 and full rank."""
        H = random_regular_check(3, 4, 12, 16, seed=1)
        dense = H.to_array()
        assert dense.shape == (12, 16)
        assert set(dense.sum(axis=0)) == {3}
        assert set(dense.sum(axis=1)) == {4}
        assert f2.rank(H) == 12

    def test_seeded(self):
        """Test that equal seeds give equal matrices."""
        assert random_regular_check(3, 4, 12, 16, seed=5) == random_regular_check(3, 4, 12, 16, seed=5)

    def test_socket_mismatch(self):
        """Test that impossible degree sequences are rejected."""
        with pytest.raises(ValueError, match="Socket counts differ"):
            random_regular_check(3, 4, 10, 16, seed=0)
