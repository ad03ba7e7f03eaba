"""Computable pieces of hyper-Kaehler quantisation: characters, series, models."""

from .errors import (ConvergenceError, DimensionError, DomainError, EmptyError,
                     ExpansionDirectionError, HKQError, NotACharacterError)

__version__ = "0.1.0"

__all__ = ["ConvergenceError", "DimensionError", "DomainError", "EmptyError",
           "ExpansionDirectionError", "HKQError", "NotACharacterError", "__version__"]
