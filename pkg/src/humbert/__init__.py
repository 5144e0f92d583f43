"""Hyperelliptic quotients of generalized Humbert curves."""

from humbert.errors import CapacityError, HumbertDomainError, PrecisionError

__all__ = ["CapacityError", "HumbertDomainError", "PrecisionError"]
