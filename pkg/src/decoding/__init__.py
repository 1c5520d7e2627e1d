"""The ReShape decoder."""
