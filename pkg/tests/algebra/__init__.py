"""Tests for GF(2) linear algebra."""
