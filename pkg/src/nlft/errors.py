"""Exception types shared across the library.

Two broad families matter to callers (and to the CLI exit codes):
``InputError`` for malformed documents and out-of-domain arguments, and
``NumericalError`` for failures of the numerics themselves.
"""
from __future__ import annotations


class NlftError(Exception):
    """Base class for all library errors."""


class InputError(NlftError, ValueError):
    """Invalid user input: documents, domains, preconditions (CLI exit 1)."""


class SpecDocumentError(InputError):
    """A measure or potential document failed validation.

    ``path`` is the JSON path of the offending field, e.g. ``atoms[2].mass``.
    """

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class DomainError(InputError):
    """An argument lies outside an operation's domain."""


class NumericalError(NlftError, ArithmeticError):
    """A numerical procedure failed (CLI exit 2)."""


class NotPositiveDefiniteError(NumericalError):
    """Moment matrix is not positive definite."""


class ResonanceError(NumericalError):
    """Evaluation hit a pole (a = 0, or a Schur-representation pole)."""


class QuadratureError(NumericalError):
    """Adaptive quadrature could not reach the requested tolerance."""
