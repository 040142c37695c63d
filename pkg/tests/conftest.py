from __future__ import annotations

import os
import sys

_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, _ROOT)

import pytest

from src.kinematics import KinematicParams, LeaderBrakeParams
from src.simulation import (
    DEFAULT_USE_CASES, ScenarioConfig, build_situations, calibrate_follower_brake,
)

TARGET_WORST_CASE_A = 14.670


@pytest.fixture(scope="session")
def scenario() -> ScenarioConfig:
    return ScenarioConfig()


@pytest.fixture(scope="session")
def situations(scenario):
    return build_situations(scenario)


@pytest.fixture(scope="session")
def leader() -> LeaderBrakeParams:
    return LeaderBrakeParams()


@pytest.fixture(scope="session")
def use_case_a():
    return DEFAULT_USE_CASES[0]


@pytest.fixture(scope="session")
def use_case_b():
    return DEFAULT_USE_CASES[1]


@pytest.fixture(scope="session")
def calibrated_kin(situations, leader, use_case_a) -> KinematicParams:
    a_brake = calibrate_follower_brake(
        TARGET_WORST_CASE_A, use_case_a, situations, KinematicParams(follower_min_brake=1.0), leader,
    )
    return KinematicParams(reaction_time=0.1, follower_max_accel=2.0, follower_min_brake=a_brake)
