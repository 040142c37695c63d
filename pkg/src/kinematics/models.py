"""
Data models for the RSS safe-distance calculation.
"""

import math
from dataclasses import dataclass
from typing import Optional

from src.utils.errors import ConfigurationError

# Sanity bound on the follower reaction time (seconds)
MAX_REACTION_TIME = 10.0
GRAVITY = 9.81


def _require_positive(value: float, field: str) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise ConfigurationError(f"must be a finite number > 0, got {value!r}", field)


@dataclass(frozen=True)
class KinematicParams:
    """Follower constants of the safe-distance formula."""
    reaction_time: float = 0.1           # ρ [s]
    follower_max_accel: float = 2.0      # a_max,acc,F [m/s²]
    follower_min_brake: float = 6.41     # a_min,brake,F [m/s²]
    gravity: float = GRAVITY             # g [m/s²]

    def __post_init__(self):
        _require_positive(self.reaction_time, "reaction_time")
        _require_positive(self.follower_max_accel, "follower_max_accel")
        _require_positive(self.follower_min_brake, "follower_min_brake")
        _require_positive(self.gravity, "gravity")
        if self.reaction_time >= MAX_REACTION_TIME:
            raise ConfigurationError(
                f"must be < {MAX_REACTION_TIME} s, got {self.reaction_time}", "reaction_time"
            )


@dataclass(frozen=True)
class LeaderBrakeParams:
    """Leader mass and brake-system cap. A force limit of None means no cap."""
    mass: float = 40_000.0                           # m_L [kg]
    brakesystem_force_limit: Optional[float] = None  # F_b,brakesystem,limit,L [N]
    gravity: float = GRAVITY                         # g [m/s²]

    def __post_init__(self):
        _require_positive(self.mass, "mass")
        _require_positive(self.gravity, "gravity")
        if self.brakesystem_force_limit is not None:
            _require_positive(self.brakesystem_force_limit, "brakesystem_force_limit")


@dataclass(frozen=True)
class SpeedPair:
    """Follower and leader speeds in m/s."""
    follower_speed: float
    leader_speed: float

    def __post_init__(self):
        for name in ("follower_speed", "leader_speed"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ConfigurationError(f"must be a finite number >= 0, got {value!r}", name)

    @classmethod
    def platoon(cls, speed: float) -> "SpeedPair":
        """Established platoon: both vehicles drive at the same speed."""
        return cls(follower_speed=speed, leader_speed=speed)
