"""Exception hierarchy shared across the package."""


class SecureSetError(Exception):
    """Base class for all errors raised by this package."""


class InputError(SecureSetError, ValueError):
    """Invalid input: bad vertex ids, malformed data, violated preconditions."""


class ParseError(InputError):
    """Malformed text input; carries the offending line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class BudgetError(SecureSetError):
    """A configured resource budget refuses the requested computation."""
