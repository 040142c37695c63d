"""
Exact discrete-expectation evaluation of the uncertainty handlers over the
situation space, safety-margin grid search, follower-brake calibration and
the threshold/dispersion sensitivity sweep.
"""

import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from typing import Callable, Dict, Iterable, List, Optional, Sequence, TypeVar, Union

from scipy.optimize import brentq

from src.kinematics import (
    KinematicParams, LeaderBrakeParams, SpeedPair,
    leader_brake_decel, safe_distance_unclamped,
)
from src.uncertainty import (
    HandlerConfig, HandlerKind, TruncatedNormal,
    bisect_exceedance, exceedance, exceedance_quantile, handle,
    handle_supervisor, point_estimate,
)
from src.utils.errors import ConfigurationError, DomainError, NumericalError
from .models import (
    DeltaMuGrid, EvaluationResult, Situation, SituationRow, SweepPoint, UseCase,
)

T = TypeVar("T")
R = TypeVar("R")

WEIGHT_SUM_TOL = 1e-9
CALIBRATION_BRACKET = (1e-3, 1e3)   # m/s²


# ================= Helpers =================

def _map(fn: Callable[[T], R], items: Sequence[T], workers: int) -> List[R]:
    # Executor.map keeps input order, so aggregation does not depend on scheduling
    if workers <= 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def kinematics_for(kin: KinematicParams, use_case: UseCase) -> KinematicParams:
    """Follower constants with the use case's reaction time."""
    return replace(kin, reaction_time=use_case.reaction_time)


def _check_weights(situations: Sequence[Situation]) -> None:
    if not situations:
        raise DomainError("situation space is empty")
    total = math.fsum(s.weight for s in situations)
    if abs(total - 1.0) > WEIGHT_SUM_TOL:
        raise DomainError(f"situation weights must sum to 1, got {total!r}")


def distance_for(mu_safe: float, speed: float, kin: KinematicParams, leader: LeaderBrakeParams):
    """(clamped d_safe, clamp active) for one speed and assumed leader friction."""
    raw = safe_distance_unclamped(SpeedPair.platoon(speed), kin, leader_brake_decel(mu_safe, leader))
    return max(0.0, raw), raw < 0.0


# ================= Evaluation =================

def evaluate(handler: HandlerConfig, situations: Sequence[Situation], use_case: UseCase,
             kin: KinematicParams, leader: LeaderBrakeParams, workers: int = 1) -> EvaluationResult:
    """
    Expected safe distance and expected assumed friction of one handler.

    Args:
        handler: Handler with delta_mu / static_value already resolved where needed
        situations: Weighted situation space (weights sum to 1)
        use_case: Reaction time to apply
        kin: Follower constants (the reaction time is taken from use_case)
        leader: Leader brake parameters
        workers: Number of threads evaluating situations

    Returns:
        EvaluationResult with per-situation rows in situation order
    """
    _check_weights(situations)
    kin_uc = kinematics_for(kin, use_case)

    def row(situation: Situation) -> SituationRow:
        mu_safe = handle(handler, situation.dist, situation.supervised)
        distance, clamped = distance_for(mu_safe, situation.speed, kin_uc, leader)
        return SituationRow(situation=situation, mu_safe=mu_safe, distance=distance, clamped=clamped)

    rows = _map(row, sorted(situations, key=lambda s: s.index), workers)
    return EvaluationResult(
        handler=handler.kind,
        handler_label=handler.name,
        use_case=use_case.label,
        expected_distance=math.fsum(r.situation.weight * r.distance for r in rows),
        expected_mu=math.fsum(r.situation.weight * r.mu_safe for r in rows),
        rows=tuple(rows),
        delta_mu=handler.delta_mu,
        static_value=handler.static_value,
    )


def optimize_delta_mu(handler: HandlerConfig, situations: Sequence[Situation], use_case: UseCase,
                      kin: KinematicParams, leader: LeaderBrakeParams,
                      grid: Union[DeltaMuGrid, Iterable[float]] = DeltaMuGrid(),
                      workers: int = 1, verbose: bool = False) -> float:
    """
    Grid search for the safety margin that minimizes the expected safe distance.

    Ties go to the smallest margin.
    """
    if not handler.kind.is_supervisor:
        raise ConfigurationError(f"{handler.kind.value} has no safety margin to optimize", "kind")
    values = grid.values() if isinstance(grid, DeltaMuGrid) else sorted(grid)
    if not values:
        raise ConfigurationError("safety margin grid is empty", "optimization")

    best_delta: Optional[float] = None
    best_distance = math.inf
    for delta in values:
        result = evaluate(replace(handler, delta_mu=delta), situations, use_case, kin, leader, workers)
        if verbose:
            print(f"🔍 {handler.name}/{use_case.label} Δμ={delta:.3f} → E[d]={result.expected_distance:.4f} m", file=sys.stderr)
        if result.expected_distance < best_distance:
            best_delta, best_distance = delta, result.expected_distance

    if verbose:
        print(f"✅ {handler.name}/{use_case.label} Δμ*={best_delta:.3f} (E[d]={best_distance:.4f} m)", file=sys.stderr)
    return best_delta


def mixture_exceedance(situations: Sequence[Situation], x: float) -> float:
    """Exceedance of the situation-marginal friction mixture."""
    return math.fsum(s.weight * exceedance(s.dist, x) for s in situations)


def static_design_value(situations: Sequence[Situation], threshold: float) -> float:
    """
    Situation-independent design-time friction: the exceedance quantile of
    the friction mixture over all situations at the given threshold.
    """
    _check_weights(situations)
    lower = min(s.lower for s in situations)
    upper = max(s.upper for s in situations)
    return bisect_exceedance(lambda x: mixture_exceedance(situations, x), lower, upper, threshold)


def resolve_handler(handler: HandlerConfig, situations: Sequence[Situation], use_case: UseCase,
                    kin: KinematicParams, leader: LeaderBrakeParams,
                    grid: Union[DeltaMuGrid, Iterable[float]] = DeltaMuGrid(),
                    workers: int = 1, verbose: bool = False) -> HandlerConfig:
    """Fill in an omitted safety margin or static design value."""
    if handler.kind == HandlerKind.STATIC_DESIGN_TIME and handler.static_value is None:
        return replace(handler, static_value=static_design_value(situations, handler.policy.strictest()))
    if handler.kind.is_supervisor and handler.delta_mu is None:
        delta = optimize_delta_mu(handler, situations, use_case, kin, leader, grid, workers, verbose)
        return replace(handler, delta_mu=delta)
    return handler


# ================= Calibration =================

def calibrate_follower_brake(target_distance: float, use_case: UseCase, situations: Sequence[Situation],
                             kin: KinematicParams, leader: LeaderBrakeParams,
                             verbose: bool = False) -> float:
    """
    Follower braking deceleration a_min,brake,F for which the worst-case
    handler's expected safe distance equals target_distance.

    Args:
        target_distance: Expected worst-case safe distance to reproduce [m]
        use_case: Reaction time the target refers to
        situations: Situation space the expectation runs over
        kin: Follower constants; follower_min_brake is the unknown
        leader: Leader brake parameters

    Returns:
        a_min,brake,F in m/s²
    """
    if not (math.isfinite(target_distance) and target_distance > 0):
        raise DomainError(f"target distance must be > 0, got {target_distance!r}")
    _check_weights(situations)

    worst = HandlerConfig(kind=HandlerKind.WORST_CASE, default_value=situations[0].upper)

    def residual(a_brake: float) -> float:
        trial = replace(kin, follower_min_brake=a_brake)
        return evaluate(worst, situations, use_case, trial, leader).expected_distance - target_distance

    lo, hi = CALIBRATION_BRACKET
    f_lo, f_hi = residual(lo), residual(hi)
    if f_lo < 0 or f_hi > 0:
        raise DomainError(
            f"target {target_distance} m is unattainable for a_min,brake,F in [{lo}, {hi}] m/s²"
        )
    if f_hi == 0:
        return hi

    try:
        a_brake = brentq(residual, lo, hi, xtol=1e-12, maxiter=500)
    except (RuntimeError, ValueError) as e:
        raise NumericalError(f"calibration did not converge: {e}")
    if verbose:
        print(f"🔍 Calibrated a_min,brake,F = {a_brake:.6f} m/s² for {target_distance} m ({use_case.label})", file=sys.stderr)
    return float(a_brake)


# ================= Comparison helpers =================

def utility_gain(result: EvaluationResult, baseline: EvaluationResult) -> float:
    """Relative reduction of the expected safe distance against a baseline (0.29 = 29%)."""
    if baseline.expected_distance <= 0:
        raise DomainError("baseline expected distance must be > 0")
    return 1.0 - result.expected_distance / baseline.expected_distance


def use_case_gaps(results: Sequence[EvaluationResult], first: str, second: str) -> Dict[str, Optional[float]]:
    """
    E[d](second) - E[d](first) per handler label; None when the [·]₊ clamp
    was active in either result (the gap is then not reaction-time only).
    """
    by_key = {(r.handler_label, r.use_case): r for r in results}
    gaps: Dict[str, Optional[float]] = {}
    for r in results:
        if r.use_case != first:
            continue
        other = by_key.get((r.handler_label, second))
        if other is None:
            continue
        gaps[r.handler_label] = None if (r.clamped or other.clamped) \
            else other.expected_distance - r.expected_distance
    return gaps


# ================= Sensitivity sweep =================

def sensitivity_sweep(handlers: Sequence[HandlerKind], u_values: Sequence[float],
                      sigma_set: Sequence[float], mu_set: Sequence[float],
                      speed: float, kin: KinematicParams, leader: LeaderBrakeParams,
                      delta_mu: float = 0.2, mu_bounds=(0.1, 1.1), workers: int = 1) -> List[SweepPoint]:
    """
    Safe distance at one speed for every (handler, mu, sigma, u) cell.

    The swept u is applied as a fixed threshold, so the adaptive kinds behave
    like their fixed counterparts here. Output order is (handler, mu, sigma, u)
    with u ascending.
    """
    for u in u_values:
        if not 0.0 < u <= 1.0:
            raise DomainError(f"u_acceptable must lie within (0, 1], got {u!r}")
    for sigma in sigma_set:
        if not sigma > 0:
            raise DomainError(f"sigma must be > 0, got {sigma!r}")
    lower, upper = mu_bounds
    u_sorted = sorted(u_values)

    cells = [(kind, mu, sigma, u)
             for kind in handlers for mu in mu_set for sigma in sigma_set for u in u_sorted]

    def point(cell) -> SweepPoint:
        kind, mu, sigma, u = cell
        dist = TruncatedNormal(mu, sigma, lower, upper)
        if kind == HandlerKind.WORST_CASE:
            mu_safe = upper
        elif kind.is_supervisor:
            mu_safe = handle_supervisor(point_estimate(dist, delta_mu), u, upper)
        else:
            # the static baseline's mixture collapses to this single distribution
            mu_safe = exceedance_quantile(dist, u)
        distance, _ = distance_for(mu_safe, speed, kin, leader)
        return SweepPoint(handler=kind, mu=mu, sigma=sigma, u_acceptable=u, mu_safe=mu_safe, distance=distance)

    return _map(point, cells, workers)
