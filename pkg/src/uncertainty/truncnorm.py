"""
Truncated-normal friction distribution: CDF, exceedance u(x) = P(mu > x) and
its inverse, the exceedance (tail) quantile.
"""

from typing import Callable

from scipy.special import ndtr

from src.utils.errors import DomainError
from .models import TruncatedNormal

# Bisection stops once the bracket is this narrow (friction units)
QUANTILE_XTOL = 1e-12
MAX_BISECT_STEPS = 200


def _mass(dist: TruncatedNormal) -> float:
    a = (dist.lower - dist.mean) / dist.sigma
    b = (dist.upper - dist.mean) / dist.sigma
    return float(ndtr(b) - ndtr(a))


def tn_cdf(dist: TruncatedNormal, x: float) -> float:
    """P(mu <= x) under the truncated normal; 0 left of the support, 1 right of it."""
    if x <= dist.lower:
        return 0.0
    if x >= dist.upper:
        return 1.0
    a = (dist.lower - dist.mean) / dist.sigma
    z = (x - dist.mean) / dist.sigma
    value = float(ndtr(z) - ndtr(a)) / _mass(dist)
    return min(1.0, max(0.0, value))


def exceedance(dist: TruncatedNormal, x: float) -> float:
    """
    Uncertainty u(x) = P(mu > x) = 1 - F(x).

    Evaluated through upper-tail probabilities so values around 1e-6 keep
    their relative precision.
    """
    if x <= dist.lower:
        return 1.0
    if x >= dist.upper:
        return 0.0
    z = (x - dist.mean) / dist.sigma
    b = (dist.upper - dist.mean) / dist.sigma
    value = float(ndtr(-z) - ndtr(-b)) / _mass(dist)
    return min(1.0, max(0.0, value))


def bisect_exceedance(u_of_x: Callable[[float], float], lower: float, upper: float,
                      u: float, xtol: float = QUANTILE_XTOL) -> float:
    """
    Smallest x in [lower, upper] with u_of_x(x) <= u, for a non-increasing u_of_x.

    The bracket keeps u_of_x(hi) <= u < u_of_x(lo); hi is returned.
    """
    if not 0.0 <= u <= 1.0:
        raise DomainError(f"probability must be within [0, 1], got {u!r}")
    if u_of_x(lower) <= u:
        return lower
    if u == 0.0:
        return upper

    lo, hi = lower, upper
    for _ in range(MAX_BISECT_STEPS):
        if hi - lo <= xtol:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if u_of_x(mid) <= u:
            hi = mid
        else:
            lo = mid
    return hi


def exceedance_quantile(dist: TruncatedNormal, u: float) -> float:
    """
    Tail quantile: the smallest friction whose exceedance is at most u.

    Args:
        dist: Situational friction distribution
        u: Accepted exceedance probability in [0, 1]

    Returns:
        Friction value in [dist.lower, dist.upper]; dist.upper for u = 0
    """
    return bisect_exceedance(lambda x: exceedance(dist, x), dist.lower, dist.upper, u)
