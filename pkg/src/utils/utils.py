import math
from typing import List

import numpy as np

from .errors import DomainError, NumericalError

KMH_PER_MS = 3.6


def kmh_to_ms(speed_kmh: float) -> float:
    """Convert km/h to m/s."""
    return speed_kmh / KMH_PER_MS


def log_spaced(low: float, high: float, points: int) -> List[float]:
    """
    Log-spaced values from low to high, both endpoints included exactly.

    Args:
        low: First value (> 0)
        high: Last value (>= low)
        points: Number of values (>= 2)

    Returns:
        List of floats in ascending order
    """
    if not (0 < low < high):
        raise DomainError(f"need 0 < low < high, got low={low!r}, high={high!r}")
    if points < 2:
        raise DomainError(f"need at least 2 points, got {points}")

    values = np.logspace(math.log10(low), math.log10(high), num=points).tolist()
    # pin the endpoints; logspace round-trips through log10
    values[0] = float(low)
    values[-1] = float(high)
    return values


def _check_finite(value: float) -> float:
    if not math.isfinite(value):
        raise NumericalError(f"refusing to emit non-finite number {value!r}")
    return value


def fmt_full(value: float) -> str:
    """Full precision (17 significant digits) for CSV fields."""
    return format(_check_finite(float(value)), ".17g")


def fmt_fixed(value: float, decimals: int = 3) -> str:
    """Fixed-width decimal for report tables; independent of locale."""
    return f"{_check_finite(float(value)):.{decimals}f}"
