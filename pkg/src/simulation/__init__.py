"""
Situation space construction and the expectation engine.
"""

from .models import (
    WeatherAnchor, DEFAULT_ANCHORS, ScenarioConfig, Situation,
    UseCase, DEFAULT_USE_CASES, DeltaMuGrid, SituationRow, EvaluationResult, SweepPoint,
)
from .scenario import friction_grid, dispersion, friction_weights, velocity_weights, build_situations
from .engine import (
    evaluate, optimize_delta_mu, static_design_value, mixture_exceedance, resolve_handler,
    calibrate_follower_brake, sensitivity_sweep, utility_gain, use_case_gaps, kinematics_for,
)

__all__ = [
    'WeatherAnchor', 'DEFAULT_ANCHORS', 'ScenarioConfig', 'Situation',
    'UseCase', 'DEFAULT_USE_CASES', 'DeltaMuGrid', 'SituationRow', 'EvaluationResult', 'SweepPoint',
    'friction_grid', 'dispersion', 'friction_weights', 'velocity_weights', 'build_situations',
    'evaluate', 'optimize_delta_mu', 'static_design_value', 'mixture_exceedance', 'resolve_handler',
    'calibrate_follower_brake', 'sensitivity_sweep', 'utility_gain', 'use_case_gaps', 'kinematics_for',
]
