"""
Shared helpers: error types and number formatting.
"""

from .errors import PlatoonSimError, ConfigurationError, DomainError, NumericalError
from .utils import fmt_full, fmt_fixed, kmh_to_ms, log_spaced

__all__ = [
    'PlatoonSimError', 'ConfigurationError', 'DomainError', 'NumericalError',
    'fmt_full', 'fmt_fixed', 'kmh_to_ms', 'log_spaced',
]
