"""Tests for noise and result models."""

import pytest

from src.models.noise import CSV_HEADER, McResult, NoiseModel, SweepReport
from src.models.operator import Species


class TestNoiseModel:
    """Test cases for NoiseModel."""

    def test_defaults(self):
        """Test that phase-flip noise is the default."""
        assert NoiseModel(0.1).species is Species.Z

    def test_invalid_probability(self):
        """Test that probabilities outside [0, 1] are rejected."""
        with pytest.raises(ValueError, match="within \\[0, 1\\]"):
            NoiseModel(1.5)
        with pytest.raises(ValueError, match="within \\[0, 1\\]"):
            NoiseModel(-0.1)


class TestMcResult:
    """Test cases for McResult."""

    def test_p_fail(self):
        """Test the failure ratio."""
        result = McResult("planar:3", 0.01, 100, 5, 0.02, 7)
        assert result.p_fail == 0.05

    def test_csv_row(self):
        """Test the CSV rendering order."""
        result = McResult("planar:3", 0.01, 100, 5, 0.02, 7)
        assert CSV_HEADER == ["code_id", "p", "trials", "failures", "p_fail", "ci", "seed"]
        assert result.csv_row() == ["planar:3", "0.01", "100", "5", "0.05", "0.02", "7"]

    def test_invalid_counts(self):
        """Test that impossible counts are rejected."""
        with pytest.raises(ValueError, match="at least one trial"):
            McResult("c", 0.1, 0, 0, 0.0, 1)
        with pytest.raises(ValueError, match="must lie within"):
            McResult("c", 0.1, 10, 11, 0.0, 1)


class TestSweepReport:
    """Test cases for SweepReport."""

    def test_passed(self):
        """Test the pass criterion."""
        report = SweepReport("c", Species.Z, 1, total=13, call_bound_left=1, call_bound_right=0)
        report.max_calls_left = 1
        assert report.passed
        assert report.corrected == 13

    def test_failures_and_bounds(self):
        """Test that failures or exceeded bounds fail the report."""
        report = SweepReport("c", Species.Z, 1, total=13, failures=[(3,)], call_bound_left=1)
        assert not report.passed
        assert report.corrected == 12
        bounded = SweepReport("c", Species.Z, 1, total=1, max_calls_left=2, call_bound_left=1)
        assert not bounded.calls_within_bound
