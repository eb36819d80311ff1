"""Exception hierarchy shared across the package.

ValidationError subclasses ValueError so that plain ``except ValueError``
call sites (and the numerical kernels, which raise ValueError directly)
behave consistently.
"""


class SpontradError(Exception):
    """Base class for all package errors."""


class ValidationError(SpontradError, ValueError):
    """Invalid input values or broken data invariants."""


class SpectrumFormatError(ValidationError):
    """A spectrum or overlay file could not be parsed."""


class SelectionEmptyError(ValidationError):
    """An energy/count selection removed every bin."""


class InsufficientDataError(ValidationError):
    """Too few bins for the requested fit."""


class NumericalError(SpontradError, ArithmeticError):
    """An iterative numerical routine failed to converge."""
