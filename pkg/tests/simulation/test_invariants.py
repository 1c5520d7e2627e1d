"""Tests for the executable property suites."""

import numpy as np

from src.codes.oracles import build_decoder_suite
from src.simulation.invariants import (
    _require,
    _run,
    naive_rank,
    reference_seeds,
    run_all,
    sim_properties,
)
from src.utils.families import build_family


class TestHelpers:
    """Test cases for the reference helpers."""

    def test_naive_rank(self):
        """Test entry-wise elimination on small matrices."""
        assert naive_rank(np.eye(3, dtype=np.uint8)) == 3
        assert naive_rank(np.zeros((2, 4), dtype=np.uint8)) == 0
        assert naive_rank(np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]])) == 2

    def test_failed_property(self):
        """Test that a failing check is reported with its counterexample."""
        def check():
            _require(False, "counterexample here")
            return 1

        result = _run("m", "always_fails", check)
        assert not result.passed
        assert result.counterexample == "counterexample here"

    def test_passing_property(self):
        """Test that a passing check reports its case count."""
        result = _run("m", "ok", lambda: 7)
        assert result.passed and result.checked == 7

    def test_reference_seeds(self):
        """Test that every reference seed has its transpose alongside."""
        seeds = reference_seeds()
        assert len(seeds) % 2 == 0
        half = len(seeds) // 2
        for seed, transposed in zip(seeds[:half], seeds[half:]):
            assert transposed.H == seed.H.T


class TestRunAll:
    """Every suite passes on small reference codes."""

    def test_planar(self):
        """Test all suites on the planar code."""
        code = build_family("planar:3")
        suite = build_decoder_suite(code.seed_a, code.seed_b)
        results = run_all(code, suite, seed=0, samples=30)
        assert {r.module for r in results} == {"f2", "classical", "hgp", "reshape", "sim"}
        for result in results:
            assert result.passed, f"{result.module}/{result.name}: {result.counterexample}"

    def test_toric_sim_suite(self):
        """Test the sim suite on the toric code."""
        code = build_family("toric:3")
        suite = build_decoder_suite(code.seed_a, code.seed_b)
        for result in sim_properties(code, suite, np.random.default_rng(3), samples=30):
            assert result.passed, f"{result.name}: {result.counterexample}"
