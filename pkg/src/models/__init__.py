"""Frozen data types shared across packages."""
