"""
RSS longitudinal safe distance with a friction-limited leader deceleration.
"""

import math

from src.utils.errors import DomainError
from .models import KinematicParams, LeaderBrakeParams, SpeedPair

# Physical sanity range for the friction coefficient
MU_MAX_PHYSICAL = 2.0


def leader_brake_decel(mu: float, params: LeaderBrakeParams) -> float:
    """
    Maximum leader deceleration, bounded by traction and by the brake system.

    Args:
        mu: Friction coefficient of the leader's road surface
        params: Leader mass, brake-system force limit and gravity

    Returns:
        min(g·mu, F_limit / m_L) in m/s², or g·mu when the brake system is uncapped
    """
    if not (math.isfinite(mu) and mu > 0):
        raise DomainError(f"friction coefficient must be > 0, got {mu!r}")
    if mu > MU_MAX_PHYSICAL:
        raise DomainError(f"friction coefficient must be <= {MU_MAX_PHYSICAL}, got {mu!r}")

    traction = params.gravity * mu
    if params.brakesystem_force_limit is None:
        return traction
    return min(traction, params.brakesystem_force_limit / params.mass)


def safe_distance_unclamped(speeds: SpeedPair, kin: KinematicParams, a_brake_leader: float) -> float:
    """Safe-distance expression before the [·]₊ clamp; negative when the leader needs longer to stop."""
    if not (math.isfinite(a_brake_leader) and a_brake_leader > 0):
        raise DomainError(f"leader braking deceleration must be > 0, got {a_brake_leader!r}")
    if kin.follower_min_brake <= 0:
        raise DomainError(f"follower braking deceleration must be > 0, got {kin.follower_min_brake!r}")

    rho = kin.reaction_time
    v_f = speeds.follower_speed
    v_l = speeds.leader_speed
    v_after_reaction = v_f + rho * kin.follower_max_accel

    reaction = v_f * rho + 0.5 * kin.follower_max_accel * rho ** 2
    follower_braking = v_after_reaction ** 2 / (2.0 * kin.follower_min_brake)
    leader_braking = v_l ** 2 / (2.0 * a_brake_leader)
    return reaction + follower_braking - leader_braking


def safe_distance(speeds: SpeedPair, kin: KinematicParams, a_brake_leader: float) -> float:
    """
    Minimum following distance in meters, clamped at zero.

    Args:
        speeds: Follower and leader speeds
        kin: Follower reaction time, acceleration and braking constants
        a_brake_leader: Leader braking deceleration in m/s²

    Returns:
        max(0, reaction distance + follower braking distance - leader braking distance)
    """
    return max(0.0, safe_distance_unclamped(speeds, kin, a_brake_leader))
