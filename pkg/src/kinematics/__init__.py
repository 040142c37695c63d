"""
RSS safe-distance kinematics.
"""

from .models import KinematicParams, LeaderBrakeParams, SpeedPair, GRAVITY
from .rss import leader_brake_decel, safe_distance, safe_distance_unclamped

__all__ = [
    'KinematicParams', 'LeaderBrakeParams', 'SpeedPair', 'GRAVITY',
    'leader_brake_decel', 'safe_distance', 'safe_distance_unclamped',
]
