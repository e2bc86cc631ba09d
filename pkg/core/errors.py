"""
Exception types shared across the meadow toolkit.
"""
from typing import Optional


class MeadowError(Exception):
    """Base class for every error raised by this package."""


class UsageError(MeadowError, ValueError):
    """The caller asked for something the API does not support."""


class DomainError(MeadowError, ValueError):
    """A mathematically undefined request (radical of zero and the like)."""


class ParseError(UsageError):
    """Syntax error in a term, value or law, with a 1-based column."""

    def __init__(self, message: str, column: Optional[int] = None, text: str = ""):
        self.column = column
        self.text = text
        if column is not None:
            message = f"{message} at column {column}"
        super().__init__(message)
