"""Tests for the ReShape decoder."""
