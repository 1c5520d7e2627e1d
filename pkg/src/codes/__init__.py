"""Classical seed codes, their oracles, and hypergraph products."""
