"""File formats, code families and logging setup."""
