"""
Friction uncertainty model and the runtime uncertainty handlers.
"""

from .models import (
    MU_LOWER, MU_UPPER,
    TruncatedNormal, PointEstimate, DistributionEstimate, FrictionEstimate,
    FixedThreshold, AdaptiveThreshold, ThresholdPolicy,
    HandlerKind, HandlerConfig,
)
from .truncnorm import tn_cdf, exceedance, exceedance_quantile, bisect_exceedance
from .handlers import (
    resolve_threshold, handle_supervisor, handle_margin_selector, point_estimate, handle,
)

__all__ = [
    'MU_LOWER', 'MU_UPPER',
    'TruncatedNormal', 'PointEstimate', 'DistributionEstimate', 'FrictionEstimate',
    'FixedThreshold', 'AdaptiveThreshold', 'ThresholdPolicy',
    'HandlerKind', 'HandlerConfig',
    'tn_cdf', 'exceedance', 'exceedance_quantile', 'bisect_exceedance',
    'resolve_threshold', 'handle_supervisor', 'handle_margin_selector', 'point_estimate', 'handle',
]
