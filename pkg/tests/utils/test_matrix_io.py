"""Tests for matrix and vector file I/O."""

import os
import tempfile
from pathlib import Path

import numpy as np
import pytest

from src.codes.classical import hamming_check, random_regular_check, repetition_check
from src.models.binmatrix import BinMatrix
from src.models.errors import MatrixFormatError
from src.utils.matrix_io import (
    alist_text,
    dense_text,
    parse_alist,
    parse_dense,
    read_matrix,
    read_vector,
    write_matrix,
)


def _write(text, suffix=".txt"):
    with tempfile.NamedTemporaryFile(mode="w", delete=False, suffix=suffix) as f:
        f.write(text)
        return f.name


class TestDenseFormat:
    """Test cases for the dense text format."""

    def test_parse(self):
        """Test a well-formed file with a comment."""
        path = _write("# open repetition code\n2 3\n1 1 0\n0 1 1\n")
        try:
            assert parse_dense(path) == repetition_check(3)
        finally:
            os.unlink(path)

    def test_round_trip(self):
        """Test writing and reading back."""
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "hamming.txt"
            write_matrix(hamming_check(), path)
            assert read_matrix(path) == hamming_check()

    def test_dense_text(self):
        """Test the exact rendering."""
        assert dense_text(repetition_check(3)) == "2 3\n1 1 0\n0 1 1\n"

    def test_missing_rows(self):
        """Test that a short body reports the last line."""
        path = _write("3 2\n1 0\n0 1\n")
        try:
            with pytest.raises(MatrixFormatError, match="expected 3 rows, found 2") as info:
                parse_dense(path)
            assert info.value.line == 3
        finally:
            os.unlink(path)

    def test_non_binary_entry(self):
        """Test that an entry other than 0 or 1 is reported with its line."""
        path = _write("2 2\n1 0\n0 2\n")
        try:
            with pytest.raises(MatrixFormatError, match="entries must be 0 or 1") as info:
                parse_dense(path)
            assert info.value.line == 3
            assert str(info.value).startswith(f"{path}:3:")
        finally:
            os.unlink(path)

    def test_wrong_row_length(self):
        """Test that a short row is refused."""
        path = _write("1 3\n1 0\n")
        try:
            with pytest.raises(MatrixFormatError, match="expected 3 entries"):
                parse_dense(path)
        finally:
            os.unlink(path)

    def test_bad_header(self):
        """Test headers that are not two positive integers."""
        for text in ("2\n1 0\n", "a b\n", "0 3\n"):
            path = _write(text)
            try:
                with pytest.raises(MatrixFormatError):
                    parse_dense(path)
            finally:
                os.unlink(path)

    def test_missing_file(self):
        """Test that a missing file is reported."""
        with pytest.raises(MatrixFormatError, match="file not found"):
            read_matrix("does-not-exist.txt")

    def test_unknown_format(self):
        """Test that an unknown format name is refused."""
        with pytest.raises(ValueError, match="Unknown matrix format"):
            write_matrix(repetition_check(3), "x.bin", "binary")


class TestAlistFormat:
    """Test cases for the alist format."""

    def test_alist_text(self):
        """Test the exact rendering of the open repetition check."""
        expected = "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 3\n"
        assert alist_text(repetition_check(3)) == expected

    def test_round_trip(self):
        """Test writing and reading a random regular check."""
        H = random_regular_check(3, 4, 9, 12, seed=2)
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "random.alist"
            write_matrix(H, path)
            assert read_matrix(path) == H
            assert parse_alist(path) == H

    def test_zero_matrix_round_trip(self):
        """Test that an all-zero matrix keeps one placeholder per adjacency line."""
        Z = BinMatrix.zeros(2, 3)
        assert alist_text(Z) == "3 2\n0 0\n0 0 0\n0 0\n0\n0\n0\n0\n0\n"
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "zero.alist"
            write_matrix(Z, path)
            assert read_matrix(path) == Z

    def test_isolated_column_round_trip(self):
        """Test a matrix whose last column is empty."""
        H = BinMatrix.from_array(np.array([[1, 1, 0], [0, 1, 0]], dtype=np.uint8))
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "isolated.alist"
            write_matrix(H, path)
            assert read_matrix(path) == H

    def test_inconsistent_row_list(self):
        """Test that row lists contradicting the column lists are refused."""
        text = "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 3\n2 3\n"
        path = _write(text, suffix=".alist")
        try:
            with pytest.raises(MatrixFormatError, match="row 1 disagrees") as info:
                read_matrix(path)
            assert info.value.line == 8
        finally:
            os.unlink(path)

    def test_degree_mismatch(self):
        """Test that differing edge counts are refused."""
        path = _write("3 2\n2 2\n1 2 1\n2 1\n1 0\n1 2\n2 0\n1 2\n2 0\n", suffix=".alist")
        try:
            with pytest.raises(MatrixFormatError, match="different edges"):
                read_matrix(path)
        finally:
            os.unlink(path)

    def test_truncated(self):
        """Test that a truncated file is refused."""
        path = _write("3 2\n2 2\n", suffix=".alist")
        try:
            with pytest.raises(MatrixFormatError, match="four header lines"):
                read_matrix(path)
        finally:
            os.unlink(path)


class TestReadVector:
    """Test cases for binary vector files."""

    def test_multiline(self):
        """Test that bits may span several lines."""
        path = _write("1 0 1\n0 1\n")
        try:
            assert list(read_vector(path, 5)) == [1, 0, 1, 0, 1]
        finally:
            os.unlink(path)

    def test_wrong_length(self):
        """Test that a vector of the wrong length is refused."""
        path = _write("1 0 1\n")
        try:
            with pytest.raises(MatrixFormatError, match="expected 4 bits, found 3"):
                read_vector(path, 4)
        finally:
            os.unlink(path)

    def test_non_binary(self):
        """Test that non-binary entries are refused."""
        path = _write("1 3\n")
        try:
            with pytest.raises(MatrixFormatError, match="entries must be 0 or 1"):
                read_vector(path, 2)
        finally:
            os.unlink(path)
