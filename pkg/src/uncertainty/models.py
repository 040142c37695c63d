"""
Data models for friction uncertainty and the uncertainty handlers.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Union

from src.utils.errors import ConfigurationError, DomainError

MU_LOWER = 0.1
MU_UPPER = 1.1


# ================= Distributions & estimates =================

@dataclass(frozen=True)
class TruncatedNormal:
    """Situational friction distribution: a normal cut off at [lower, upper]."""
    mean: float
    sigma: float
    lower: float = MU_LOWER
    upper: float = MU_UPPER

    def __post_init__(self):
        for name in ("mean", "sigma", "lower", "upper"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigurationError(f"must be finite, got {getattr(self, name)!r}", name)
        if not self.lower < self.upper:
            raise ConfigurationError(f"need lower < upper, got [{self.lower}, {self.upper}]", "lower")
        if self.sigma <= 0:
            raise ConfigurationError(f"must be > 0, got {self.sigma}", "sigma")
        if not self.lower <= self.mean <= self.upper:
            raise ConfigurationError(
                f"must lie within [{self.lower}, {self.upper}], got {self.mean}", "mean"
            )


@dataclass(frozen=True)
class PointEstimate:
    """DDC output for the supervisors: a single friction value and its exceedance uncertainty."""
    value: float
    uncertainty: float

    def __post_init__(self):
        if not 0.0 <= self.uncertainty <= 1.0:
            raise DomainError(f"uncertainty must be within [0, 1], got {self.uncertainty!r}")


@dataclass(frozen=True)
class DistributionEstimate:
    """DDC output for the margin selectors: the full uncertainty function."""
    dist: TruncatedNormal

    def quantile(self, u: float) -> float:
        """Inverse of the exceedance function, (1 - F)^-1."""
        from .truncnorm import exceedance_quantile
        return exceedance_quantile(self.dist, u)


FrictionEstimate = Union[PointEstimate, DistributionEstimate]


# ================= Threshold policies =================

def _check_threshold(value: float, name: str) -> None:
    if not (isinstance(value, (int, float)) and 0.0 < value <= 1.0):
        raise ConfigurationError(f"threshold must be within (0, 1], got {value!r}", name)


@dataclass(frozen=True)
class FixedThreshold:
    """Constant u_acceptable."""
    u_acceptable: float

    def __post_init__(self):
        _check_threshold(self.u_acceptable, "u_acceptable")

    def strictest(self) -> float:
        return self.u_acceptable


@dataclass(frozen=True)
class AdaptiveThreshold:
    """u_acceptable chosen by the supervision context (True = a human is supervising)."""
    by_context: Dict[bool, float] = field(default_factory=lambda: {True: 1e-5, False: 1e-6})

    def __post_init__(self):
        for context in (True, False):
            if context not in self.by_context:
                raise ConfigurationError(f"missing threshold for supervised={context}", "thresholds")
            _check_threshold(self.by_context[context], f"thresholds.{'supervised' if context else 'unsupervised'}")

    def strictest(self) -> float:
        return min(self.by_context.values())


ThresholdPolicy = Union[FixedThreshold, AdaptiveThreshold]


# ================= Handlers =================

class HandlerKind(str, Enum):
    WORST_CASE = "worst_case"
    STATIC_DESIGN_TIME = "static_design_time"
    SUPERVISOR = "supervisor"
    ADAPTIVE_SUPERVISOR = "adaptive_supervisor"
    MARGIN_SELECTOR = "margin_selector"
    ADAPTIVE_MARGIN_SELECTOR = "adaptive_margin_selector"

    @property
    def is_supervisor(self) -> bool:
        return self in (HandlerKind.SUPERVISOR, HandlerKind.ADAPTIVE_SUPERVISOR)

    @property
    def is_selector(self) -> bool:
        return self in (HandlerKind.MARGIN_SELECTOR, HandlerKind.ADAPTIVE_MARGIN_SELECTOR)

    @property
    def is_adaptive(self) -> bool:
        return self in (HandlerKind.ADAPTIVE_SUPERVISOR, HandlerKind.ADAPTIVE_MARGIN_SELECTOR)


@dataclass(frozen=True)
class HandlerConfig:
    """
    One uncertainty handling pattern with its threshold policy.

    delta_mu and static_value may be left as None; the engine resolves them
    (grid search for supervisors, mixture quantile for the static baseline).
    """
    kind: HandlerKind
    policy: ThresholdPolicy = field(default_factory=lambda: FixedThreshold(1e-6))
    default_value: float = MU_UPPER
    delta_mu: Optional[float] = None
    static_value: Optional[float] = None
    label: Optional[str] = None

    def __post_init__(self):
        if not isinstance(self.kind, HandlerKind):
            raise ConfigurationError(f"unknown handler kind {self.kind!r}", "kind")
        if self.kind.is_adaptive and not isinstance(self.policy, AdaptiveThreshold):
            raise ConfigurationError(f"{self.kind.value} needs an adaptive threshold policy", "threshold")
        if self.kind in (HandlerKind.SUPERVISOR, HandlerKind.MARGIN_SELECTOR) \
                and not isinstance(self.policy, FixedThreshold):
            raise ConfigurationError(f"{self.kind.value} needs a fixed threshold", "threshold")
        if self.delta_mu is not None and not (math.isfinite(self.delta_mu) and self.delta_mu >= 0):
            raise ConfigurationError(f"must be >= 0, got {self.delta_mu!r}", "delta_mu")
        if self.static_value is not None and not math.isfinite(self.static_value):
            raise ConfigurationError(f"must be finite, got {self.static_value!r}", "static_value")

    @property
    def name(self) -> str:
        return self.label or self.kind.value
