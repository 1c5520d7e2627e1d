"""Noise sampling, Monte Carlo runs and property suites."""
