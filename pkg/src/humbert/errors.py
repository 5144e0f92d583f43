"""Exceptions raised by the humbert library."""


class HumbertDomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class CapacityError(RuntimeError):
    """An exhaustive computation would exceed a configured cap."""


class PrecisionError(ArithmeticError):
    """Numeric residuals do not meet the requested tolerance."""
