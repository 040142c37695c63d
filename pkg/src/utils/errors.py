"""
Error types shared by the simulation packages and the CLI.
"""


class PlatoonSimError(Exception):
    """Base exception class for simulation errors."""
    pass


class ConfigurationError(PlatoonSimError, ValueError):
    """Raised when a configuration value or value-type invariant is invalid."""

    def __init__(self, message: str, field: str = None):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field


class DomainError(PlatoonSimError, ValueError):
    """Raised when an operation is called outside its mathematical domain."""
    pass


class NumericalError(PlatoonSimError, ArithmeticError):
    """Raised when a numerical procedure cannot produce a result."""
    pass
