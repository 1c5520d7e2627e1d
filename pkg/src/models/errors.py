"""Exception hierarchy shared by every package.

All errors derive from ``ValueError`` so callers that only care about bad
input can keep catching that.
"""

from typing import Optional


class ReshapeError(ValueError):
    """Base class for all library errors."""


class MatrixFormatError(ReshapeError):
    """A matrix file could not be parsed.

    Args:
        message: What went wrong
        path: File being read
        line: 1-based line number of the offending line, if known
    """

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        self.path = path
        self.line = line
        location = ""
        if path is not None:
            location = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(f"{location}{message}")


class DimensionMismatchError(ReshapeError):
    """Operands have incompatible shapes or lengths."""


class ContractViolation(ReshapeError):
    """A documented precondition of an operation does not hold."""


class InconsistentSyndromeError(ReshapeError):
    """The syndrome is not in the image of the check matrix."""


class BudgetExceededError(ReshapeError):
    """An exhaustive enumeration or table would exceed its budget."""
