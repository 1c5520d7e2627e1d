"""Tests for ReShape decoding."""

import numpy as np
import pytest

from src.codes import hgp
from src.codes.oracles import build_decoder_suite
from src.decoding import reshape as rs
from src.models.binmatrix import BinMatrix
from src.models.errors import ContractViolation, DimensionMismatchError, InconsistentSyndromeError
from src.models.operator import OpPair, OracleCall, Species
from src.simulation.invariants import reshape_properties
from src.simulation.sim import adversarial_sweep, decode_error, sample_shaped_error
from src.utils.families import build_family


def _left_op(rows, right_shape=(2, 2)):
    return OpPair(BinMatrix.from_array(rows), BinMatrix.zeros(*right_shape), Species.Z)


class TestCanonicalForms:
    """Test cases for the free/logical split."""

    def setup_method(self):
        """Set up test fixtures."""
        self.code = build_family("planar:3")

    def test_left_split(self):
        """Test that the row 001 splits into free 101 and logical 100."""
        form = rs.canonical_left(self.code, BinMatrix.from_array([[0, 0, 1], [0, 0, 0], [0, 0, 0]]))
        assert np.array_equal(form.free.to_array()[0], [1, 0, 1])
        assert np.array_equal(form.logical.to_array()[0], [1, 0, 0])
        assert form.reconstruct() == BinMatrix.from_array([[0, 0, 1], [0, 0, 0], [0, 0, 0]])

    def test_zero(self):
        """Test that zero has zero parts."""
        form = rs.canonical_left(self.code, BinMatrix.zeros(3, 3))
        assert form.free.is_zero() and form.logical.is_zero()

    def test_stabilizer_has_no_logical_part(self):
        """Test that stabilizers are entirely free."""
        stab = hgp.z_stabilizer(self.code, 1, 1)
        assert rs.canonical_left(self.code, stab.left).logical.is_zero()
        assert rs.canonical_right(self.code, stab.right).logical.is_zero()
        assert rs.wt_rc_log(self.code, stab) == (0, 0)

    def test_planar_right_part_is_free(self):
        """Test that every right grid of the planar code is free (im δ_A is everything)."""
        R = BinMatrix.from_array([[1, 1], [0, 1]])
        assert rs.canonical_right(self.code, R).logical.is_zero()

    def test_toric_right_split(self):
        """Test a right logical part on the toric code."""
        code = build_family("toric:3")
        R = BinMatrix.from_array([[1, 0, 0], [0, 0, 0], [0, 0, 0]])
        form = rs.canonical_right(code, R)
        assert form.reconstruct() == R
        assert rs.col_log(code, R) == (0,)

    def test_shape_checked(self):
        """Test that grids of the wrong size are refused."""
        with pytest.raises(DimensionMismatchError):
            rs.canonical_left(self.code, BinMatrix.zeros(2, 3))
        with pytest.raises(DimensionMismatchError):
            rs.canonical_right(self.code, BinMatrix.zeros(3, 3))


class TestWeights:
    """Test cases for row-column weights."""

    def setup_method(self):
        """Set up test fixtures."""
        self.code = build_family("planar:3")

    def test_wt_rc(self):
        """Test counting nonzero left rows and right columns."""
        op = _left_op([[1, 1, 0], [0, 0, 0], [1, 0, 0]])
        assert rs.wt_rc(op) == (2, 0)
        op = OpPair(BinMatrix.zeros(3, 3), BinMatrix.from_array([[1, 0], [1, 0]]))
        assert rs.wt_rc(op) == (0, 1)

    def test_wt_rc_log_of_logical(self):
        """Test that the planar Z-logical has logical weight (3, 0)."""
        logical = hgp.logical_z_basis(self.code)[0]
        assert rs.wt_rc_log(self.code, logical) == (3, 0)
        assert rs.row_log(self.code, logical.left) == (0, 1, 2)

    def test_row_log_invariant_under_stabilizers(self):
        """Test that adding stabilizers keeps the logical rows."""
        op = _left_op([[0, 0, 1], [0, 1, 0], [0, 0, 0]])
        moved = op + hgp.z_stabilizer(self.code, 2, 0) + hgp.z_stabilizer(self.code, 0, 1)
        assert rs.row_log(self.code, moved.left) == rs.row_log(self.code, op.left)


class TestFindValidSolution:
    """Test cases for syndrome inversion."""

    def setup_method(self):
        """Set up test fixtures."""
        self.code = build_family("toric:3")

    def test_zero_syndrome(self):
        """Test that the zero syndrome gives the zero operator."""
        assert rs.find_valid_solution(self.code, BinMatrix.zeros(3, 3)).is_zero()

    def test_solution_has_syndrome(self):
        """Test that the solution reproduces the syndrome of a random error."""
        e = np.random.default_rng(4).integers(0, 2, size=self.code.n).astype(np.uint8)
        S = hgp.syndrome_z(self.code, hgp.reshape(self.code, e))
        assert hgp.syndrome_z(self.code, rs.find_valid_solution(self.code, S)) == S

    def test_inconsistent_syndrome(self):
        """Test that an odd toric syndrome is refused."""
        with pytest.raises(InconsistentSyndromeError, match="inconsistent syndrome"):
            rs.find_valid_solution(self.code, BinMatrix.unit(3, 3, 0, 0))

    def test_wrong_shape(self):
        """Test that a syndrome of the wrong shape is refused."""
        with pytest.raises(DimensionMismatchError):
            rs.find_valid_solution(self.code, BinMatrix.zeros(2, 3))

    def test_x_solution(self):
        """Test the X-species solver."""
        e = np.zeros(self.code.n, dtype=np.uint8)
        e[[1, 10]] = 1
        S = hgp.syndrome_x(self.code, hgp.reshape(self.code, e, Species.X))
        start = rs.find_valid_solution_x(self.code, S)
        assert start.species is Species.X
        assert hgp.syndrome_x(self.code, start) == S


class TestDecodeZ:
    """Test cases for Z-error decoding."""

    def setup_method(self):
        """Set up test fixtures."""
        self.code = build_family("planar:3")
        self.suite = build_decoder_suite(self.code.seed_a, self.code.seed_b)

    def test_zero_syndrome(self):
        """Test that the zero syndrome costs no oracle calls."""
        zero = OpPair.zeros((3, 3), (2, 2))
        result = rs.decode_z(self.code, self.suite.a, self.suite.b_t, BinMatrix.zeros(2, 3), zero)
        assert result.correction.is_zero()
        assert result.total_calls == 0
        assert result.trace == ()

    def test_worked_instance(self):
        """Test the two-cell start that is reshaped into a single corner flip."""
        start = _left_op([[0, 0, 0], [1, 0, 0], [1, 0, 0]])
        S = hgp.syndrome_z(self.code, start)
        result = rs.decode_z(self.code, self.suite.a, self.suite.b_t, S, start)
        assert result.correction.left == BinMatrix.unit(3, 3, 0, 0)
        assert result.correction.right.is_zero()
        assert (result.oracle_calls_a, result.oracle_calls_bT) == (1, 0)
        assert result.trace == (OracleCall("left", 0, (0, 1, 1), (1, 1, 1)),)
        assert hgp.syndrome_z(self.code, result.correction) == S

    def test_single_errors(self):
        """Test that every weight-1 error is corrected up to stabilizers."""
        for index in range(self.code.n):
            e = np.zeros(self.code.n, dtype=np.uint8)
            e[index] = 1
            op = hgp.reshape(self.code, e)
            result = rs.decode_syndrome(self.code, self.suite, hgp.syndrome_z(self.code, op))
            assert hgp.homology_equal_z(self.code, result.correction, op)

    def test_start_must_match_syndrome(self):
        """Test that a start with another syndrome is refused."""
        start = _left_op([[1, 0, 0], [0, 0, 0], [0, 0, 0]])
        with pytest.raises(ContractViolation, match="requested syndrome"):
            rs.decode_z(self.code, self.suite.a, self.suite.b_t, BinMatrix.zeros(2, 3), start)

    def test_oracles_must_match_code(self):
        """Test that swapped oracles are refused."""
        zero = OpPair.zeros((3, 3), (2, 2))
        with pytest.raises(ContractViolation, match="Oracles must decode"):
            rs.decode_z(self.code, self.suite.b_t, self.suite.a, BinMatrix.zeros(2, 3), zero)

    def test_hamming65_single_errors(self):
        """Test all 65 single errors on the Hamming product."""
        code = build_family("hamming65")
        suite = build_decoder_suite(code.seed_a, code.seed_b)
        report = adversarial_sweep(code, suite, 1)
        assert report.total == 65
        assert report.failures == []
        assert report.calls_within_bound


class TestDecodeX:
    """Test cases for X-error decoding."""

    def setup_method(self):
        """Set up test fixtures."""
        self.code = build_family("planar:3")
        self.suite = build_decoder_suite(self.code.seed_a, self.code.seed_b)

    def test_zero_syndrome(self):
        """Test that the zero syndrome gives the zero X-operator."""
        zero = OpPair.zeros((3, 3), (2, 2), Species.X)
        result = rs.decode_x(self.code, self.suite.a_t, self.suite.b, BinMatrix.zeros(3, 2), zero)
        assert result.correction.is_zero()
        assert result.correction.species is Species.X

    def test_single_errors(self):
        """Test that every weight-1 X-error is corrected within the call bounds."""
        bound_left, bound_right = rs.call_bounds(self.code, Species.X)
        for index in range(self.code.n):
            e = np.zeros(self.code.n, dtype=np.uint8)
            e[index] = 1
            record = decode_error(self.code, self.suite, e, Species.X)
            assert record.success
            assert record.result.oracle_calls_a <= bound_left
            assert record.result.oracle_calls_bT <= bound_right

    def test_species_checked(self):
        """Test that a Z start is refused."""
        zero = OpPair.zeros((3, 3), (2, 2), Species.Z)
        with pytest.raises(ContractViolation, match="Expected an X-operator"):
            rs.decode_x(self.code, self.suite.a_t, self.suite.b, BinMatrix.zeros(3, 2), zero)

    def test_toric_x_sweep(self):
        """Test every weight-1 X-error on the 3 x 3 toric code."""
        code = build_family("toric:3")
        suite = build_decoder_suite(code.seed_a, code.seed_b)
        report = adversarial_sweep(code, suite, 1, Species.X)
        assert report.passed


class TestCallBounds:
    """Test cases for per-pass call limits."""

    def test_planar(self):
        """Test that the planar code needs at most one left call and no right call."""
        code = build_family("planar:3")
        assert rs.call_bounds(code) == (1, 0)
        assert rs.call_bounds(code, Species.X) == (1, 0)

    def test_hamming65(self):
        """Test the Hamming product bounds."""
        code = build_family("hamming65")
        assert rs.call_bounds(code) == (4, 1)


class TestHalfDistanceGuarantee:
    """Every error of weight up to (d - 1) / 2 is corrected."""

    @pytest.mark.parametrize("family,t_max,total", [
        ("planar:3", 1, 13),
        ("toric:3", 1, 18),
        ("toric:5", 2, 1275),
    ])
    def test_sweep(self, family, t_max, total):
        """Test exhaustive sweeps for small codes."""
        code = build_family(family)
        suite = build_decoder_suite(code.seed_a, code.seed_b)
        report = adversarial_sweep(code, suite, t_max)
        assert report.total == total
        assert report.failures == []
        assert report.calls_within_bound


class TestRowColumnGuarantee:
    """Errors confined to few rows and columns are corrected regardless of weight."""

    def test_shaped_errors_on_planar8(self):
        """Test errors on at most three left rows and three right columns."""
        code = build_family("planar:8")
        suite = build_decoder_suite(code.seed_a, code.seed_b)
        rng = np.random.default_rng(2024)
        weights = []
        for _ in range(1000):
            e = sample_shaped_error(code, 3, 3, rng)
            record = decode_error(code, suite, e)
            assert record.success, f"uncorrected shaped error on {np.flatnonzero(e)}"
            weights.append(int(e.sum()))
        assert np.median(weights) > 4


class TestReshapeProperties:
    """Randomized property checks for the decoder."""

    @pytest.mark.parametrize("family", ["planar:3", "toric:3", "hamming65"])
    def test_all_properties_hold(self, family):
        """Test canonical forms, homology invariance, validity and start insensitivity."""
        code = build_family(family)
        suite = build_decoder_suite(code.seed_a, code.seed_b)
        results = reshape_properties(code, suite, np.random.default_rng(5), samples=100)
        for result in results:
            assert result.passed, f"{result.name}: {result.counterexample}"

    def test_invariance_over_a_thousand_pairs(self):
        """Test canonical forms and homology invariance on 1000 random operator/stabilizer pairs."""
        code = build_family("toric:3")
        suite = build_decoder_suite(code.seed_a, code.seed_b)
        results = {r.name: r for r in reshape_properties(code, suite, np.random.default_rng(17), samples=1000)}
        for name in ("canonical_form", "homology_invariance"):
            assert results[name].passed, f"{name}: {results[name].counterexample}"
            assert results[name].checked == 1000
