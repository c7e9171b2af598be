"""
Custom exceptions for the signedflow package
"""

from typing import Optional


class SignedFlowError(Exception):
    """Base exception class for signedflow errors."""
    pass


class ConfigurationError(SignedFlowError):
    """Raised when settings or command parameters are inconsistent."""
    pass


class ValidationError(SignedFlowError):
    """Raised when input validation fails."""

    def __init__(
        self,
        message: str,
        vertex: Optional[int] = None,
        edge: Optional[int] = None,
        line: Optional[int] = None,
    ):
        super().__init__(message)
        self.vertex = vertex
        self.edge = edge
        self.line = line


class ParseError(ValidationError):
    """Raised when an input file is malformed."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}", line=line)


class GraphMismatchError(ValidationError):
    """Raised when two objects do not share an underlying multigraph."""
    pass


class BudgetExhausted(SignedFlowError):
    """Raised inside a search when its node or time cap is reached."""
    pass


class GuardError(SignedFlowError):
    """Raised when an exhaustive computation is refused by a size guard."""
    pass


class ContractViolation(SignedFlowError):
    """Raised when a constructive step guaranteed by theory fails on valid input."""
    pass
