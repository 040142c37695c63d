from __future__ import annotations

import random

import pytest

from src.kinematics import (
    KinematicParams, LeaderBrakeParams, SpeedPair,
    leader_brake_decel, safe_distance, safe_distance_unclamped,
)
from src.utils.errors import ConfigurationError, DomainError

KIN = KinematicParams(reaction_time=0.1, follower_max_accel=2.0, follower_min_brake=6.41)
UNCAPPED = LeaderBrakeParams()


# ================= leader_brake_decel =================

def test_leader_decel_uncapped_is_g_mu():
    assert leader_brake_decel(1.1, UNCAPPED) == pytest.approx(10.791, abs=1e-12)
    assert leader_brake_decel(0.1, UNCAPPED) == pytest.approx(0.981, abs=1e-12)


def test_leader_decel_brake_system_cap():
    capped = LeaderBrakeParams(mass=1000.0, brakesystem_force_limit=6000.0)
    assert leader_brake_decel(0.8, capped) == pytest.approx(6.0)
    assert leader_brake_decel(0.5, capped) == pytest.approx(4.905)


@pytest.mark.parametrize("mu", [0.0, -0.2, 2.5, float("nan")])
def test_leader_decel_rejects_bad_friction(mu):
    with pytest.raises(DomainError):
        leader_brake_decel(mu, UNCAPPED)


def test_leader_decel_monotone_and_flat_above_cap():
    capped = LeaderBrakeParams(mass=1000.0, brakesystem_force_limit=6000.0)
    mus = [0.05 * i for i in range(1, 41)]
    decels = [leader_brake_decel(mu, capped) for mu in mus]
    assert all(a <= b for a, b in zip(decels, decels[1:]))
    assert all(d == pytest.approx(6.0) for mu, d in zip(mus, decels) if 9.81 * mu >= 6.0)


# ================= safe_distance =================

def test_safe_distance_at_standstill_keeps_reaction_phase_term():
    # from rest the follower still accelerates for rho seconds before braking
    expected = 0.5 * 2.0 * 0.1 ** 2 + (0.1 * 2.0) ** 2 / (2 * 6.41)
    assert safe_distance(SpeedPair(0.0, 0.0), KIN, 10.791) == pytest.approx(expected, abs=1e-15)
    assert safe_distance(SpeedPair(0.0, 0.0), KIN, 10.791) == pytest.approx(0.01312, abs=1e-5)


def test_safe_distance_hand_evaluated():
    v = 19.444
    expected = v * 0.1 + 0.5 * 2.0 * 0.01 + (v + 0.2) ** 2 / (2 * 6.41) - v ** 2 / (2 * 10.791)
    d = safe_distance(SpeedPair.platoon(v), KIN, 10.791)
    assert d == pytest.approx(expected, abs=1e-12)
    assert d == pytest.approx(14.54, abs=0.01)


def test_safe_distance_clamped_when_leader_is_much_faster():
    assert safe_distance(SpeedPair(5.0, 30.0), KIN, 10.791) == 0.0
    assert safe_distance_unclamped(SpeedPair(5.0, 30.0), KIN, 10.791) < 0.0


@pytest.mark.parametrize("a_brake", [0.0, -1.0])
def test_safe_distance_rejects_bad_leader_decel(a_brake):
    with pytest.raises(DomainError):
        safe_distance(SpeedPair.platoon(20.0), KIN, a_brake)


def test_safe_distance_monotone_in_leader_decel():
    rng = random.Random(7)
    for _ in range(1000):
        kin = KinematicParams(
            reaction_time=rng.uniform(0.05, 2.0),
            follower_max_accel=rng.uniform(0.5, 4.0),
            follower_min_brake=rng.uniform(2.0, 10.0),
        )
        speeds = SpeedPair(rng.uniform(0.0, 40.0), rng.uniform(0.0, 40.0))
        a1, a2 = sorted(rng.uniform(0.5, 12.0) for _ in range(2))
        assert safe_distance(speeds, kin, a1) <= safe_distance(speeds, kin, a2)


def test_safe_distance_non_increasing_in_follower_brake():
    speeds = SpeedPair.platoon(22.0)
    brakes = [3.0 + 0.5 * i for i in range(15)]
    distances = [
        safe_distance(speeds, KinematicParams(0.1, 2.0, b), 10.791) for b in brakes
    ]
    assert all(a >= b for a, b in zip(distances, distances[1:]))


def test_reaction_time_difference_independent_of_leader_decel():
    v = 20.0
    fast = KinematicParams(0.1, 2.0, 6.41)
    slow = KinematicParams(0.8, 2.0, 6.41)
    gaps = []
    for a_leader in (8.0, 9.5, 10.791):
        d_fast = safe_distance(SpeedPair.platoon(v), fast, a_leader)
        d_slow = safe_distance(SpeedPair.platoon(v), slow, a_leader)
        assert d_fast > 0
        gaps.append(d_slow - d_fast)
    assert max(gaps) - min(gaps) < 1e-9


# ================= Parameter invariants =================

@pytest.mark.parametrize("kwargs", [
    {"reaction_time": 0.0},
    {"reaction_time": 10.0},
    {"follower_max_accel": -2.0},
    {"follower_min_brake": 0.0},
    {"gravity": 0.0},
])
def test_kinematic_params_invariants(kwargs):
    with pytest.raises(ConfigurationError):
        KinematicParams(**kwargs)


def test_leader_params_invariants():
    with pytest.raises(ConfigurationError):
        LeaderBrakeParams(mass=0.0)
    with pytest.raises(ConfigurationError):
        LeaderBrakeParams(brakesystem_force_limit=-1.0)


def test_speed_pair_rejects_negative_speed():
    with pytest.raises(ConfigurationError):
        SpeedPair(-1.0, 10.0)
