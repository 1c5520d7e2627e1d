"""Tests for seed codes, oracles and product codes."""
