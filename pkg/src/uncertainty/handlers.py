"""
Uncertainty handlers: map a friction estimate and a threshold policy to the
single friction value mu_safe that the safe-distance calculation assumes.

    supervisor               point estimate + fixed threshold
    adaptive supervisor      point estimate + context-dependent threshold
    margin selector          distribution + fixed threshold
    adaptive margin selector distribution + context-dependent threshold

plus the worst-case (mu_max) and static design-time baselines.
"""

from typing import Callable, Dict

from src.utils.errors import ConfigurationError
from .models import (
    AdaptiveThreshold,
    DistributionEstimate,
    FixedThreshold,
    FrictionEstimate,
    HandlerConfig,
    HandlerKind,
    PointEstimate,
    ThresholdPolicy,
    TruncatedNormal,
)
from .truncnorm import exceedance


def resolve_threshold(policy: ThresholdPolicy, supervised: bool) -> float:
    """u_acceptable for the given supervision context."""
    if isinstance(policy, FixedThreshold):
        return policy.u_acceptable
    if isinstance(policy, AdaptiveThreshold):
        try:
            return policy.by_context[bool(supervised)]
        except KeyError:
            raise ConfigurationError(f"no threshold for supervised={bool(supervised)}", "thresholds")
    raise ConfigurationError(f"unsupported threshold policy {policy!r}", "threshold")


def handle_supervisor(est: FrictionEstimate, threshold: float, default: float) -> float:
    """Pass the estimate through if its uncertainty is acceptable (u <= threshold), else the default."""
    if not isinstance(est, PointEstimate):
        raise ConfigurationError("uncertainty supervisors need a point estimate", "kind")
    return est.value if est.uncertainty <= threshold else default


def handle_margin_selector(est: FrictionEstimate, threshold: float) -> float:
    """Least conservative friction whose exceedance meets the threshold."""
    if not isinstance(est, DistributionEstimate):
        raise ConfigurationError("safety margin selectors need a distribution estimate", "kind")
    return est.quantile(threshold)


def point_estimate(dist: TruncatedNormal, delta_mu: float) -> PointEstimate:
    """
    What the simulated DDC reports to a supervisor: prediction + margin,
    clipped to the support, and its exceedance uncertainty.
    """
    value = min(dist.mean + delta_mu, dist.upper)
    return PointEstimate(value=value, uncertainty=exceedance(dist, value))


def _worst_case(config: HandlerConfig, dist: TruncatedNormal, supervised: bool) -> float:
    return config.default_value


def _static(config: HandlerConfig, dist: TruncatedNormal, supervised: bool) -> float:
    if config.static_value is None:
        raise ConfigurationError("static design-time value is unresolved", "static_value")
    return config.static_value


def _supervisor(config: HandlerConfig, dist: TruncatedNormal, supervised: bool) -> float:
    if config.delta_mu is None:
        raise ConfigurationError("safety margin is unresolved", "delta_mu")
    est = point_estimate(dist, config.delta_mu)
    return handle_supervisor(est, resolve_threshold(config.policy, supervised), config.default_value)


def _selector(config: HandlerConfig, dist: TruncatedNormal, supervised: bool) -> float:
    est = DistributionEstimate(dist)
    return handle_margin_selector(est, resolve_threshold(config.policy, supervised))


_DISPATCH: Dict[HandlerKind, Callable[[HandlerConfig, TruncatedNormal, bool], float]] = {
    HandlerKind.WORST_CASE: _worst_case,
    HandlerKind.STATIC_DESIGN_TIME: _static,
    HandlerKind.SUPERVISOR: _supervisor,
    HandlerKind.ADAPTIVE_SUPERVISOR: _supervisor,
    HandlerKind.MARGIN_SELECTOR: _selector,
    HandlerKind.ADAPTIVE_MARGIN_SELECTOR: _selector,
}


def handle(config: HandlerConfig, situation_dist: TruncatedNormal, supervised: bool) -> float:
    """
    Apply one handler to one situation.

    Args:
        config: Handler kind, threshold policy and resolved parameters
        situation_dist: Situational friction distribution the DDC reports on
        supervised: Whether a human supervises the distance controller

    Returns:
        mu_safe, the friction assumed for the leading vehicle
    """
    if config.default_value != situation_dist.upper:
        raise ConfigurationError(
            f"default {config.default_value} must equal the upper friction bound {situation_dist.upper}",
            "default_value",
        )
    return _DISPATCH[config.kind](config, situation_dist, supervised)
