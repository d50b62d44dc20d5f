"""Exception hierarchy shared by every layer.

The CLI maps ``ValidationError`` to exit code 2 and ``NumericError`` to
exit code 3.
"""


class UQCError(Exception):
    """Base class for all package errors"""


class ValidationError(UQCError, ValueError):
    """Invalid input, violated contract or out-of-range parameter"""


class DatasetError(ValidationError):
    """Problem found while reading or checking a dataset"""

    def __init__(self, message: str, row: int | None = None):
        self.row = row
        if row is not None:
            message = f"{message} (row {row})"
        super().__init__(message)


class IntegrityError(ValidationError):
    """Checksum mismatch or conflicting artifact"""


class NumericError(UQCError, ArithmeticError):
    """Non-finite value or diverged computation"""
