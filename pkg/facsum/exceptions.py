"""Custom exceptions for Facsum.

This module defines a hierarchy of exceptions used throughout the package.
All exceptions inherit from the base FacsumException so callers can catch
every package-specific failure in one place.

Verification outcomes (failed identities, out-of-tolerance integrals) are
reported as data and never raised.
"""


class FacsumException(Exception):
    """Base exception for all Facsum errors."""
    pass


class ConfigurationError(FacsumException):
    """Raised for configuration-related errors."""
    pass


class ValidationError(FacsumException):
    """Raised for malformed user input (CLI literals, arguments)."""
    pass


class BasisMismatch(FacsumException):
    """Raised when adding polynomials tagged with different bases."""
    pass


class DomainError(FacsumException, ValueError):
    """Raised when an argument lies outside an operation's domain."""
    pass


class UnsupportedRecurrence(FacsumException):
    """Raised when an operation needs a two-term super-recurrence."""
    pass


class NoConvergence(FacsumException):
    """Raised when a truncated series or iteration misses its tolerance."""
    pass
