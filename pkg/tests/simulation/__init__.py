"""Tests for simulation and property suites."""
