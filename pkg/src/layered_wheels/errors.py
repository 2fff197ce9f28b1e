"""Exception types shared across the package."""

from __future__ import annotations


class InputError(ValueError):
    """Raised when an operation is called with arguments that violate its contract."""


class FeasibilityError(InputError):
    """Raised when a uniform(m) policy cannot be met; carries the minimal feasible m."""

    def __init__(self, message: str, minimal_m: int):
        super().__init__(message)
        self.minimal_m = minimal_m


class UnsupportedPolicyError(InputError):
    """Raised when an operation needs middle edges but the wheel is not special."""


class IntegrityError(RuntimeError):
    """Raised when a structure that should hold by construction fails verification."""


class ParseError(InputError):
    """Raised on malformed input files; carries the byte offset of the failure."""

    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset
