"""Hypergraph product codes and the ReShape decoder.

Builds CSS codes from pairs of classical parity-check matrices, decodes them
by lifting exact classical minimum-weight decoders, and measures logical
failure rates.
"""

__version__ = "0.1.0"
