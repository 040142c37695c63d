"""
Discrete weighted situation space: weather -> friction grid with interpolated
likelihoods, friction-dependent dispersion, speeds and supervision.
"""

import math
from typing import List, Tuple

import numpy as np

from src.utils.errors import ConfigurationError, DomainError
from src.utils.utils import kmh_to_ms
from .models import ScenarioConfig, Situation


def friction_grid(config: ScenarioConfig) -> List[float]:
    """Step-aligned friction values over friction_grid_range, ascending."""
    lo, hi = config.friction_grid_range
    count = int(math.floor((hi - lo) / config.friction_grid_step + 1e-9)) + 1
    return [round(lo + i * config.friction_grid_step, 12) for i in range(count)]


def dispersion(mu: float, config: ScenarioConfig) -> float:
    """
    Situational dispersion sigma, linear in mu between the two sigma endpoints.

    Args:
        mu: Expected situational friction
        config: Scenario holding the (friction, sigma) endpoints

    Returns:
        sigma, clamped to the range spanned by the endpoint sigmas
    """
    mu_lo, mu_hi = config.mu_bounds
    if not mu_lo <= mu <= mu_hi:
        raise DomainError(f"friction must lie within [{mu_lo}, {mu_hi}], got {mu!r}")

    (m0, s0), (m1, s1) = config.sigma_endpoints
    sigma = s0 + (s1 - s0) * (mu - m0) / (m1 - m0)
    return min(max(s0, s1), max(min(s0, s1), sigma))


def _sorted_anchors(config: ScenarioConfig):
    anchors = sorted(config.anchors, key=lambda a: a.friction)
    for prev, nxt in zip(anchors, anchors[1:]):
        if prev.friction == nxt.friction:
            raise ConfigurationError(f"duplicate anchor friction {nxt.friction}", "scenario.anchors")
    return anchors


def _interpolated(grid: List[float], anchors) -> List[float]:
    xs = [a.friction for a in anchors]
    ys = [a.weight for a in anchors]
    # np.interp holds the end values constant outside the anchor span
    return np.interp(grid, xs, ys).tolist()


def _binned(grid: List[float], anchors, step: float) -> List[float]:
    # each anchor's days are split linearly between its two neighbouring grid points
    weights = [0.0] * len(grid)
    for anchor in anchors:
        i = int(np.searchsorted(grid, anchor.friction, side="right")) - 1
        i = min(max(i, 0), len(grid) - 1)
        t = (anchor.friction - grid[i]) / step
        if i == len(grid) - 1 or t <= 1e-9:
            weights[i] += anchor.weight
        else:
            weights[i] += anchor.weight * (1.0 - t)
            weights[i + 1] += anchor.weight * t
    return weights


def friction_weights(config: ScenarioConfig) -> List[Tuple[float, float]]:
    """
    Likelihood of every friction grid value, derived from the weather anchors.

    Returns:
        List of (grid friction, normalized weight); weights sum to 1
    """
    if not config.anchors:
        raise ConfigurationError("at least one weather anchor is required", "scenario.anchors")
    anchors = _sorted_anchors(config)
    grid = friction_grid(config)
    if grid[0] > anchors[0].friction + 1e-9 or grid[-1] < anchors[-1].friction - 1e-9:
        raise ConfigurationError(
            f"grid [{grid[0]}, {grid[-1]}] must cover the anchor span "
            f"[{anchors[0].friction}, {anchors[-1].friction}]",
            "scenario.friction_grid_range",
        )

    if config.weighting == "binned":
        raw = _binned(grid, anchors, config.friction_grid_step)
    else:
        raw = _interpolated(grid, anchors)

    total = math.fsum(raw)
    return [(mu, w / total) for mu, w in zip(grid, raw) if w > 0]


def velocity_weights(config: ScenarioConfig) -> List[Tuple[float, float]]:
    """(speed in m/s, normalized weight) for each configured velocity."""
    raw = config.velocity_weights or [1.0] * len(config.velocities_kmh)
    total = math.fsum(raw)
    return [(kmh_to_ms(v), w / total) for v, w in zip(config.velocities_kmh, raw) if w > 0]


def build_situations(config: ScenarioConfig) -> List[Situation]:
    """
    Cartesian product friction grid x velocities x {supervised, unsupervised}.

    Weather, speed and supervision are independent, so weights multiply.
    Cells with zero probability (e.g. supervision probability 0) are left out.
    """
    lower, upper = config.mu_bounds
    p = config.supervision_probability
    supervision = [(True, p), (False, 1.0 - p)]

    situations: List[Situation] = []
    for mu, w_mu in friction_weights(config):
        sigma = dispersion(mu, config)
        for speed, w_v in velocity_weights(config):
            for supervised, w_s in supervision:
                weight = w_mu * w_v * w_s
                if weight <= 0:
                    continue
                situations.append(Situation(
                    index=len(situations),
                    friction_mean=mu,
                    sigma=sigma,
                    speed=speed,
                    supervised=supervised,
                    weight=weight,
                    lower=lower,
                    upper=upper,
                ))
    return situations
