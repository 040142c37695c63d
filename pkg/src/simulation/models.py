"""
Data models for the situation space and the simulation results.
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from src.uncertainty.models import (
    MU_LOWER, MU_UPPER, AdaptiveThreshold, HandlerKind, TruncatedNormal,
)
from src.utils.errors import ConfigurationError

MAX_SPEED_KMH = 130.0


# ================= Scenario =================

@dataclass(frozen=True)
class WeatherAnchor:
    """Road condition with its friction coefficient and frequency in days per year."""
    label: str
    friction: float
    weight: float

    def __post_init__(self):
        if not MU_LOWER <= self.friction <= MU_UPPER:
            raise ConfigurationError(
                f"must lie within [{MU_LOWER}, {MU_UPPER}], got {self.friction!r}", f"anchors.{self.label}.friction"
            )
        if not (math.isfinite(self.weight) and self.weight > 0):
            raise ConfigurationError(f"must be > 0, got {self.weight!r}", f"anchors.{self.label}.weight")


DEFAULT_ANCHORS: Tuple[WeatherAnchor, ...] = (
    WeatherAnchor("glaze", 0.14, 5.0),       # heavy / freezing rain
    WeatherAnchor("snow", 0.41, 60.0),
    WeatherAnchor("wet", 0.64, 100.0),       # light rain
    WeatherAnchor("dry", 0.80, 300.0),
)

WEIGHTING_MODES = ("interpolated", "binned")


@dataclass(frozen=True)
class ScenarioConfig:
    """Weather, friction, speed and supervision assumptions of the study."""
    anchors: Tuple[WeatherAnchor, ...] = DEFAULT_ANCHORS
    friction_grid_step: float = 0.05
    friction_grid_range: Tuple[float, float] = (0.10, 0.80)
    sigma_endpoints: Tuple[Tuple[float, float], Tuple[float, float]] = ((0.14, 0.075), (1.10, 0.020))
    mu_bounds: Tuple[float, float] = (MU_LOWER, MU_UPPER)
    velocities_kmh: Tuple[float, ...] = (60.0, 65.0, 70.0, 75.0, 80.0)
    velocity_weights: Optional[Tuple[float, ...]] = None     # None = uniform
    supervision_probability: float = 0.5
    thresholds: AdaptiveThreshold = field(default_factory=AdaptiveThreshold)
    weighting: str = "interpolated"

    def __post_init__(self):
        if not self.anchors:
            raise ConfigurationError("at least one weather anchor is required", "scenario.anchors")
        if not (math.isfinite(self.friction_grid_step) and self.friction_grid_step > 0):
            raise ConfigurationError(f"must be > 0, got {self.friction_grid_step!r}", "scenario.friction_grid_step")
        lo, hi = self.friction_grid_range
        if not lo <= hi:
            raise ConfigurationError(f"need min <= max, got {self.friction_grid_range}", "scenario.friction_grid_range")
        mu_lo, mu_hi = self.mu_bounds
        if not mu_lo < mu_hi:
            raise ConfigurationError(f"need lower < upper, got {self.mu_bounds}", "scenario.mu_bounds")
        if lo < mu_lo or hi > mu_hi:
            raise ConfigurationError("friction grid must lie within the friction bounds", "scenario.friction_grid_range")
        (m0, _), (m1, _) = self.sigma_endpoints
        if m0 == m1:
            raise ConfigurationError("sigma endpoints need distinct frictions", "scenario.sigma_endpoints")
        if any(s <= 0 for _, s in self.sigma_endpoints):
            raise ConfigurationError("sigma values must be > 0", "scenario.sigma_endpoints")
        if not self.velocities_kmh:
            raise ConfigurationError("at least one velocity is required", "scenario.velocities_kmh")
        for v in self.velocities_kmh:
            if not 0.0 <= v <= MAX_SPEED_KMH:
                raise ConfigurationError(f"must lie within [0, {MAX_SPEED_KMH}] km/h, got {v!r}", "scenario.velocities_kmh")
        if self.velocity_weights is not None:
            if len(self.velocity_weights) != len(self.velocities_kmh):
                raise ConfigurationError("need one weight per velocity", "scenario.velocity_weights")
            if any(w < 0 for w in self.velocity_weights) or sum(self.velocity_weights) <= 0:
                raise ConfigurationError("weights must be >= 0 with a positive sum", "scenario.velocity_weights")
        if not 0.0 <= self.supervision_probability <= 1.0:
            raise ConfigurationError(
                f"must lie within [0, 1], got {self.supervision_probability!r}", "scenario.supervision_probability"
            )
        if self.weighting not in WEIGHTING_MODES:
            raise ConfigurationError(f"must be one of {WEIGHTING_MODES}, got {self.weighting!r}", "scenario.weighting")


@dataclass(frozen=True)
class Situation:
    """One weighted cell of the situation space. Both vehicles drive at `speed`."""
    index: int
    friction_mean: float
    sigma: float
    speed: float            # m/s
    supervised: bool
    weight: float
    lower: float = MU_LOWER
    upper: float = MU_UPPER
    dist: TruncatedNormal = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not 0.0 < self.weight <= 1.0:
            raise ConfigurationError(f"must lie within (0, 1], got {self.weight!r}", "situation.weight")
        object.__setattr__(self, "dist", TruncatedNormal(self.friction_mean, self.sigma, self.lower, self.upper))


# ================= Engine =================

@dataclass(frozen=True)
class UseCase:
    label: str
    reaction_time: float    # ρ [s]

    def __post_init__(self):
        if not (math.isfinite(self.reaction_time) and self.reaction_time > 0):
            raise ConfigurationError(f"must be > 0, got {self.reaction_time!r}", f"use_cases.{self.label}.reaction_time")


DEFAULT_USE_CASES: Tuple[UseCase, ...] = (
    UseCase("A", 0.1),      # platooning, low-latency controller
    UseCase("B", 0.8),      # human-like reaction time
)


@dataclass(frozen=True)
class DeltaMuGrid:
    """Search grid for the supervisors' safety margin."""
    min: float = 0.0
    max: float = 0.6
    step: float = 0.005

    def __post_init__(self):
        if not (math.isfinite(self.step) and self.step > 0):
            raise ConfigurationError(f"must be > 0, got {self.step!r}", "optimization.step")
        if self.min < 0 or self.max < self.min:
            raise ConfigurationError(f"need 0 <= min <= max, got [{self.min}, {self.max}]", "optimization")

    def values(self) -> List[float]:
        count = int(math.floor((self.max - self.min) / self.step + 1e-9)) + 1
        return [round(self.min + i * self.step, 12) for i in range(count)]


@dataclass(frozen=True)
class SituationRow:
    situation: Situation
    mu_safe: float
    distance: float         # d_safe [m], clamped
    clamped: bool           # True when the [·]₊ clamp changed the value


@dataclass(frozen=True)
class EvaluationResult:
    """Expected safe distance and expected assumed friction of one handler in one use case."""
    handler: HandlerKind
    handler_label: str
    use_case: str
    expected_distance: float
    expected_mu: float
    rows: Tuple[SituationRow, ...] = ()
    delta_mu: Optional[float] = None
    static_value: Optional[float] = None

    @property
    def clamped(self) -> bool:
        return any(row.clamped for row in self.rows)


@dataclass(frozen=True)
class SweepPoint:
    handler: HandlerKind
    mu: float
    sigma: float
    u_acceptable: float
    mu_safe: float
    distance: float
