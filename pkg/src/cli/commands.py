"""
Command-line entry point: simulate, sweep, calibrate, optimize-margin.

Exit codes: 0 success, 2 validation error, 3 I/O error, 4 numerical failure.
"""

import argparse
import math
import os
import sys
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence

from src.kinematics import KinematicParams
from src.simulation import (
    EvaluationResult, Situation,
    build_situations, calibrate_follower_brake, evaluate, kinematics_for,
    optimize_delta_mu, resolve_handler, sensitivity_sweep, use_case_gaps, utility_gain,
)
from src.uncertainty import HandlerKind
from src.utils.errors import ConfigurationError, DomainError, NumericalError
from src.utils.utils import kmh_to_ms, log_spaced
from .config import RunConfig, load_config
from .report import (
    SWEEP_FILE, SWEEP_HEADER, TABLE1_FILE, TABLE1_HEADER,
    render_table1, sweep_rows, table1_rows, write_csv,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_NUMERICAL = 4


def _log(message: str) -> None:
    # progress and diagnostics; stdout carries only results
    print(message, file=sys.stderr)


@dataclass
class StudyOutcome:
    follower_min_brake: float
    results: List[EvaluationResult]


# ================= Study orchestration =================

def calibrated_kinematics(config: RunConfig, situations: Sequence[Situation],
                          verbose: bool = False) -> KinematicParams:
    """Follower constants, calibrating a_min,brake,F when the configuration leaves it unset."""
    if config.follower_min_brake is not None:
        return config.kinematics()
    use_case = config.use_case(config.calibration_use_case, "calibration.use_case")
    a_brake = calibrate_follower_brake(
        config.calibration_target, use_case, situations,
        config.kinematics(follower_min_brake=1.0), config.leader, verbose=verbose,
    )
    _log(f"🔧 Calibrated a_min,brake,F = {a_brake:.4f} m/s² "
         f"(worst case {config.calibration_target:.3f} m in use case {use_case.label})")
    return config.kinematics(follower_min_brake=a_brake)


def run_study(config: RunConfig, workers: int = 1, verbose: bool = False) -> StudyOutcome:
    """Evaluate every (use case, handler) pair in declaration order."""
    situations = build_situations(config.scenario)
    _log(f"📊 {len(situations)} situations")
    kin = calibrated_kinematics(config, situations, verbose)

    results: List[EvaluationResult] = []
    for use_case in config.use_cases:
        for handler in config.handlers:
            resolved = resolve_handler(handler, situations, use_case, kin, config.leader,
                                       config.grid, workers, verbose)
            if resolved.delta_mu is not None and handler.delta_mu is None:
                _log(f"🔍 {handler.name}/{use_case.label}: Δμ* = {resolved.delta_mu:.3f}")
            results.append(evaluate(resolved, situations, use_case, kin, config.leader, workers))
    return StudyOutcome(follower_min_brake=kin.follower_min_brake, results=results)


def _gains(results: Sequence[EvaluationResult]) -> dict:
    worst = {r.use_case: r for r in results if r.handler == HandlerKind.WORST_CASE}
    gains = {}
    for r in results:
        baseline = worst.get(r.use_case)
        if baseline is not None and baseline.expected_distance > 0:
            gains[(r.use_case, r.handler_label)] = utility_gain(r, baseline)
    return gains


# ================= Commands =================

def _load(config_path: Optional[str]) -> RunConfig:
    # an unreadable file surfaces as OSError (exit 3); bad content as ConfigurationError (exit 2)
    return load_config(config_path)


def _guarded(fn) -> int:
    try:
        return fn()
    except ConfigurationError as e:
        _log(f"❌ Invalid configuration: {e}")
        return EXIT_VALIDATION
    except (DomainError, NumericalError) as e:
        _log(f"❌ Numerical failure: {e}")
        return EXIT_NUMERICAL
    except OSError as e:
        _log(f"❌ I/O error: {e}")
        return EXIT_IO


def cmd_simulate(config_path: Optional[str] = None, out_dir: Optional[str] = None,
                 workers: int = 1, verbose: bool = False) -> int:
    """Expected safe distance and friction for every handler and use case; writes table1.csv."""
    def run() -> int:
        config = _load(config_path)
        outcome = run_study(config, workers, verbose)
        path = write_csv(os.path.join(out_dir or config.output_dir, TABLE1_FILE),
                         TABLE1_HEADER, table1_rows(outcome.results))

        gap_labels = None
        gaps = {}
        if len(config.use_cases) >= 2:
            gap_labels = (config.use_cases[0].label, config.use_cases[1].label)
            gaps = use_case_gaps(outcome.results, *gap_labels)
        print(render_table1(outcome.results, _gains(outcome.results), gaps, gap_labels))
        _log(f"✅ Wrote {path}")
        return EXIT_OK
    return _guarded(run)


def cmd_sweep(config_path: Optional[str] = None, out_dir: Optional[str] = None,
              u_min: Optional[float] = None, u_max: Optional[float] = None, points: Optional[int] = None,
              sigmas: Optional[Sequence[float]] = None, mus: Optional[Sequence[float]] = None,
              workers: int = 1) -> int:
    """Safe distance against the accepted uncertainty for several (mu, sigma) cells; writes sweep.csv."""
    def run() -> int:
        config = _load(config_path)
        sweep = config.sweep
        lo = sweep.u_min if u_min is None else u_min
        hi = sweep.u_max if u_max is None else u_max
        n = sweep.points if points is None else points
        sigma_set = list(sweep.sigmas if sigmas is None else sigmas)
        mu_set = list(sweep.mus if mus is None else mus)

        if not (0 < lo < hi <= 1):
            raise ConfigurationError(f"need 0 < u_min < u_max <= 1, got u_min={lo}, u_max={hi}", "--u-min/--u-max")
        if n < 2:
            raise ConfigurationError(f"need at least 2 points, got {n}", "--points")
        if not sigma_set or any(not (math.isfinite(s) and s > 0) for s in sigma_set):
            raise ConfigurationError(f"sigmas must be > 0, got {sigma_set}", "--sigma")
        mu_lo, mu_hi = config.scenario.mu_bounds
        if not mu_set or any(not mu_lo <= m <= mu_hi for m in mu_set):
            raise ConfigurationError(f"mus must lie within [{mu_lo}, {mu_hi}], got {mu_set}", "--mu")

        situations = build_situations(config.scenario)
        kin = calibrated_kinematics(config, situations)
        use_case = config.use_case(sweep.use_case, "sweep.use_case")
        points_out = sensitivity_sweep(
            sweep.handlers, log_spaced(lo, hi, n), sigma_set, mu_set,
            kmh_to_ms(sweep.speed_kmh), kinematics_for(kin, use_case), config.leader,
            delta_mu=sweep.delta_mu, mu_bounds=config.scenario.mu_bounds, workers=workers,
        )
        path = write_csv(os.path.join(out_dir or config.output_dir, SWEEP_FILE), SWEEP_HEADER, sweep_rows(points_out))
        _log(f"✅ Wrote {len(points_out)} sweep points to {path}")
        return EXIT_OK
    return _guarded(run)


def cmd_calibrate(config_path: Optional[str] = None, target: Optional[float] = None) -> int:
    """Print the follower braking deceleration that reproduces the worst-case target distance."""
    def run() -> int:
        config = _load(config_path)
        goal = config.calibration_target if target is None else target
        if not (math.isfinite(goal) and goal > 0):
            raise ConfigurationError(f"must be > 0, got {goal}", "--target")
        situations = build_situations(config.scenario)
        use_case = config.use_case(config.calibration_use_case, "calibration.use_case")
        a_brake = calibrate_follower_brake(goal, use_case, situations,
                                           config.kinematics(follower_min_brake=1.0), config.leader)
        print(f"{a_brake:.4f}")
        return EXIT_OK
    return _guarded(run)


def cmd_optimize_margin(config_path: Optional[str] = None, verbose: bool = False) -> int:
    """Print the optimal safety margin of every supervisor handler per use case."""
    def run() -> int:
        config = _load(config_path)
        situations = build_situations(config.scenario)
        kin = calibrated_kinematics(config, situations)
        supervisors = [h for h in config.handlers if h.kind.is_supervisor]
        if not supervisors:
            _log("⚠️ No supervisor handlers configured")
        for use_case in config.use_cases:
            for handler in supervisors:
                delta = optimize_delta_mu(handler, situations, use_case, kin, config.leader,
                                          config.grid, verbose=verbose)
                result = evaluate(replace(handler, delta_mu=delta), situations, use_case, kin, config.leader)
                print(f"{handler.name:<24} {use_case.label:<4} delta_mu={delta:.3f}  "
                      f"E[d]={result.expected_distance:.3f} m  E[mu]={result.expected_mu:.3f}")
        return EXIT_OK
    return _guarded(run)


# ================= Argument parsing =================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="platoon",
        description="Runtime friction-uncertainty handling patterns for the platoon safe distance.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", default=None, help="JSON configuration file (defaults reproduce the study)")

    p = sub.add_parser("simulate", help="expected safe distance per handler and use case")
    common(p)
    p.add_argument("--out", default=None, help="output directory for table1.csv")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--verbose", action="store_true")

    p = sub.add_parser("sweep", help="sensitivity to the accepted uncertainty and the dispersion")
    common(p)
    p.add_argument("--out", default=None, help="output directory for sweep.csv")
    p.add_argument("--u-min", type=float, default=None)
    p.add_argument("--u-max", type=float, default=None)
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--sigma", type=float, nargs="+", default=None)
    p.add_argument("--mu", type=float, nargs="+", default=None)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("calibrate", help="follower braking deceleration for a worst-case target distance")
    common(p)
    p.add_argument("--target", type=float, default=None, help="expected worst-case safe distance [m]")

    p = sub.add_parser("optimize-margin", help="optimal safety margin per supervisor handler")
    common(p)
    p.add_argument("--verbose", action="store_true")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "simulate":
        return cmd_simulate(args.config, args.out, args.workers, args.verbose)
    if args.command == "sweep":
        return cmd_sweep(args.config, args.out, args.u_min, args.u_max, args.points,
                         args.sigma, args.mu, args.workers)
    if args.command == "calibrate":
        return cmd_calibrate(args.config, args.target)
    return cmd_optimize_margin(args.config, args.verbose)
