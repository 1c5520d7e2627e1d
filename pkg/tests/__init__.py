"""Test suite for the hypergraph product toolkit."""
