"""
Run configuration: a JSON document merged over DEFAULT_CONFIG, validated
field by field. Every error names the offending dotted field.
"""

import copy
import json
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from src.kinematics import KinematicParams, LeaderBrakeParams
from src.uncertainty import AdaptiveThreshold, FixedThreshold, HandlerConfig, HandlerKind
from src.simulation import DeltaMuGrid, ScenarioConfig, UseCase, WeatherAnchor
from src.utils.errors import ConfigurationError

# ================= Defaults (the study's constants) =================

DEFAULT_CONFIG: Dict[str, Any] = {
    "scenario": {
        "anchors": [
            {"label": "glaze", "friction": 0.14, "weight": 5},
            {"label": "snow", "friction": 0.41, "weight": 60},
            {"label": "wet", "friction": 0.64, "weight": 100},
            {"label": "dry", "friction": 0.80, "weight": 300},
        ],
        "friction_grid_step": 0.05,
        "friction_grid_range": [0.10, 0.80],
        "sigma_endpoints": [[0.14, 0.075], [1.10, 0.020]],
        "mu_bounds": [0.1, 1.1],
        "velocities_kmh": [60, 65, 70, 75, 80],
        "velocity_weights": None,
        "supervision_probability": 0.5,
        "thresholds": {"supervised": 1e-5, "unsupervised": 1e-6},
        "weighting": "interpolated",
    },
    "use_cases": [
        {"label": "A", "reaction_time": 0.1},
        {"label": "B", "reaction_time": 0.8},
    ],
    "kinematics": {
        "follower_max_accel": 2.0,
        "follower_min_brake": None,     # None = calibrate against calibration.target_distance_m
        "gravity": 9.81,
    },
    "leader": {
        "mass": 40000.0,
        "brakesystem_force_limit": None,
    },
    "handlers": [
        {"kind": "worst_case"},
        {"kind": "static_design_time", "threshold": 1e-6},
        {"kind": "supervisor", "threshold": 1e-6},
        {"kind": "adaptive_supervisor", "threshold": "adaptive"},
        {"kind": "margin_selector", "threshold": 1e-6},
        {"kind": "adaptive_margin_selector", "threshold": "adaptive"},
    ],
    "optimization": {"min": 0.0, "max": 0.6, "step": 0.005},
    "calibration": {"target_distance_m": 14.670, "use_case": "A"},
    "sweep": {
        "use_case": "A",
        "speed_kmh": 70.0,
        "delta_mu": 0.2,
        "handlers": ["worst_case", "supervisor", "margin_selector"],
        "u_min": 1e-8,
        "u_max": 1e-1,
        "points": 15,
        "sigmas": [0.02, 0.05, 0.1],
        "mus": [0.5, 0.7, 0.9],
    },
    "output_dir": "out",
}


@dataclass(frozen=True)
class SweepSettings:
    use_case: str = "A"
    speed_kmh: float = 70.0
    delta_mu: float = 0.2
    handlers: Tuple[HandlerKind, ...] = (HandlerKind.WORST_CASE, HandlerKind.SUPERVISOR, HandlerKind.MARGIN_SELECTOR)
    u_min: float = 1e-8
    u_max: float = 1e-1
    points: int = 15
    sigmas: Tuple[float, ...] = (0.02, 0.05, 0.1)
    mus: Tuple[float, ...] = (0.5, 0.7, 0.9)


@dataclass(frozen=True)
class RunConfig:
    """Everything one CLI run needs."""
    scenario: ScenarioConfig
    use_cases: Tuple[UseCase, ...]
    follower_max_accel: float
    follower_min_brake: Optional[float]
    gravity: float
    leader: LeaderBrakeParams
    handlers: Tuple[HandlerConfig, ...]
    grid: DeltaMuGrid = field(default_factory=DeltaMuGrid)
    calibration_target: float = 14.670
    calibration_use_case: str = "A"
    sweep: SweepSettings = field(default_factory=SweepSettings)
    output_dir: str = "out"

    def kinematics(self, follower_min_brake: Optional[float] = None) -> KinematicParams:
        """Follower constants; the reaction time is replaced per use case by the engine."""
        a_brake = follower_min_brake if follower_min_brake is not None else self.follower_min_brake
        if a_brake is None:
            raise ConfigurationError("unset and not calibrated", "kinematics.follower_min_brake")
        return KinematicParams(
            reaction_time=self.use_cases[0].reaction_time,
            follower_max_accel=self.follower_max_accel,
            follower_min_brake=a_brake,
            gravity=self.gravity,
        )

    def use_case(self, label: str, field_name: str) -> UseCase:
        for uc in self.use_cases:
            if uc.label == label:
                return uc
        raise ConfigurationError(f"unknown use case {label!r}", field_name)


# ================= Field readers =================

def _number(doc: Dict[str, Any], key: str, path: str, *, optional: bool = False) -> Optional[float]:
    value = doc.get(key)
    if value is None and optional:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ConfigurationError(f"must be a finite number, got {value!r}", f"{path}.{key}")
    return float(value)


def _numbers(doc: Dict[str, Any], key: str, path: str, length: Optional[int] = None) -> List[float]:
    value = doc.get(key)
    if not isinstance(value, list):
        raise ConfigurationError(f"must be a list, got {value!r}", f"{path}.{key}")
    if length is not None and len(value) != length:
        raise ConfigurationError(f"must have {length} entries, got {len(value)}", f"{path}.{key}")
    out = []
    for i, item in enumerate(value):
        if isinstance(item, bool) or not isinstance(item, (int, float)) or not math.isfinite(item):
            raise ConfigurationError(f"must be a finite number, got {item!r}", f"{path}.{key}[{i}]")
        out.append(float(item))
    return out


def _section(doc: Dict[str, Any], key: str, path: str = "") -> Dict[str, Any]:
    value = doc.get(key)
    if not isinstance(value, dict):
        raise ConfigurationError(f"must be an object, got {value!r}", f"{path}.{key}" if path else key)
    return value


def _handler_kind(value: Any, path: str) -> HandlerKind:
    try:
        return HandlerKind(value)
    except ValueError:
        choices = ", ".join(k.value for k in HandlerKind)
        raise ConfigurationError(f"unknown handler {value!r} (expected one of: {choices})", path)


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


# ================= Section parsers =================

def _parse_scenario(doc: Dict[str, Any]) -> ScenarioConfig:
    s = _section(doc, "scenario")
    path = "scenario"

    anchors_raw = s.get("anchors")
    if not isinstance(anchors_raw, list) or not anchors_raw:
        raise ConfigurationError("must be a non-empty list", f"{path}.anchors")
    anchors = []
    for i, a in enumerate(anchors_raw):
        if not isinstance(a, dict):
            raise ConfigurationError("must be an object", f"{path}.anchors[{i}]")
        label = str(a.get("label", f"anchor{i}"))
        anchors.append(WeatherAnchor(
            label=label,
            friction=_number(a, "friction", f"{path}.anchors[{i}]"),
            weight=_number(a, "weight", f"{path}.anchors[{i}]"),
        ))

    endpoints = s.get("sigma_endpoints")
    if not isinstance(endpoints, list) or len(endpoints) != 2:
        raise ConfigurationError("must be two [friction, sigma] pairs", f"{path}.sigma_endpoints")
    pairs = tuple(
        tuple(_numbers({"p": e}, "p", f"{path}.sigma_endpoints[{i}]", length=2)) for i, e in enumerate(endpoints)
    )

    thresholds = _section(s, "thresholds", path)
    adaptive = AdaptiveThreshold({
        True: _number(thresholds, "supervised", f"{path}.thresholds"),
        False: _number(thresholds, "unsupervised", f"{path}.thresholds"),
    })

    velocity_weights = s.get("velocity_weights")
    return ScenarioConfig(
        anchors=tuple(anchors),
        friction_grid_step=_number(s, "friction_grid_step", path),
        friction_grid_range=tuple(_numbers(s, "friction_grid_range", path, length=2)),
        sigma_endpoints=pairs,
        mu_bounds=tuple(_numbers(s, "mu_bounds", path, length=2)),
        velocities_kmh=tuple(_numbers(s, "velocities_kmh", path)),
        velocity_weights=None if velocity_weights is None else tuple(_numbers(s, "velocity_weights", path)),
        supervision_probability=_number(s, "supervision_probability", path),
        thresholds=adaptive,
        weighting=str(s.get("weighting", "interpolated")),
    )


def _parse_use_cases(doc: Dict[str, Any]) -> Tuple[UseCase, ...]:
    raw = doc.get("use_cases")
    if not isinstance(raw, list) or not raw:
        raise ConfigurationError("at least one use case is required", "use_cases")
    use_cases = []
    for i, uc in enumerate(raw):
        if not isinstance(uc, dict) or not uc.get("label"):
            raise ConfigurationError("must be an object with a label", f"use_cases[{i}]")
        use_cases.append(UseCase(str(uc["label"]), _number(uc, "reaction_time", f"use_cases[{i}]")))
    labels = [uc.label for uc in use_cases]
    if len(set(labels)) != len(labels):
        raise ConfigurationError(f"labels must be unique, got {labels}", "use_cases")
    return tuple(use_cases)


def _parse_handlers(doc: Dict[str, Any], scenario: ScenarioConfig) -> Tuple[HandlerConfig, ...]:
    raw = doc.get("handlers")
    if not isinstance(raw, list) or not raw:
        raise ConfigurationError("at least one handler is required", "handlers")
    handlers = []
    for i, h in enumerate(raw):
        path = f"handlers[{i}]"
        if not isinstance(h, dict):
            raise ConfigurationError("must be an object", path)
        kind = _handler_kind(h.get("kind"), f"{path}.kind")
        label = h.get("label")
        if label is not None and not (isinstance(label, str) and label.strip()):
            raise ConfigurationError(f"must be a non-empty string, got {label!r}", f"{path}.label")

        try:
            if h.get("threshold", "adaptive" if kind.is_adaptive else None) == "adaptive":
                policy = scenario.thresholds
            elif "threshold" in h:
                policy = FixedThreshold(_number(h, "threshold", path))
            else:
                policy = FixedThreshold(scenario.thresholds.strictest())
            handlers.append(HandlerConfig(
                kind=kind,
                policy=policy,
                default_value=scenario.mu_bounds[1],
                delta_mu=_number(h, "delta_mu", path, optional=True),
                static_value=_number(h, "static_value", path, optional=True),
                label=label,
            ))
        except ConfigurationError as e:
            if e.field and e.field.startswith(path):
                raise
            raise ConfigurationError(str(e), path)
    names = [h.name for h in handlers]
    if len(set(names)) != len(names):
        raise ConfigurationError(f"labels must be unique, got {names}", "handlers")
    return tuple(handlers)


def _parse_sweep(doc: Dict[str, Any]) -> SweepSettings:
    s = _section(doc, "sweep")
    kinds = s.get("handlers")
    if not isinstance(kinds, list) or not kinds:
        raise ConfigurationError("must be a non-empty list", "sweep.handlers")
    points = s.get("points")
    if isinstance(points, bool) or not isinstance(points, int):
        raise ConfigurationError(f"must be an integer, got {points!r}", "sweep.points")
    return SweepSettings(
        use_case=str(s.get("use_case", "A")),
        speed_kmh=_number(s, "speed_kmh", "sweep"),
        delta_mu=_number(s, "delta_mu", "sweep"),
        handlers=tuple(_handler_kind(k, f"sweep.handlers[{i}]") for i, k in enumerate(kinds)),
        u_min=_number(s, "u_min", "sweep"),
        u_max=_number(s, "u_max", "sweep"),
        points=points,
        sigmas=tuple(_numbers(s, "sigmas", "sweep")),
        mus=tuple(_numbers(s, "mus", "sweep")),
    )


def parse_config(doc: Dict[str, Any]) -> RunConfig:
    """Validate a configuration document (already merged over the defaults)."""
    if not isinstance(doc, dict):
        raise ConfigurationError("configuration must be a JSON object")

    scenario = _parse_scenario(doc)
    use_cases = _parse_use_cases(doc)

    kin = _section(doc, "kinematics")
    gravity = _number(kin, "gravity", "kinematics")
    follower_max_accel = _number(kin, "follower_max_accel", "kinematics")
    follower_min_brake = _number(kin, "follower_min_brake", "kinematics", optional=True)
    if follower_min_brake is not None and follower_min_brake <= 0:
        raise ConfigurationError(f"must be > 0, got {follower_min_brake}", "kinematics.follower_min_brake")
    if follower_max_accel <= 0 or gravity <= 0:
        raise ConfigurationError("acceleration and gravity must be > 0", "kinematics")

    lead = _section(doc, "leader")
    try:
        leader = LeaderBrakeParams(
            mass=_number(lead, "mass", "leader"),
            brakesystem_force_limit=_number(lead, "brakesystem_force_limit", "leader", optional=True),
            gravity=gravity,
        )
    except ConfigurationError as e:
        raise ConfigurationError(str(e), "leader")

    opt = _section(doc, "optimization")
    grid = DeltaMuGrid(
        min=_number(opt, "min", "optimization"),
        max=_number(opt, "max", "optimization"),
        step=_number(opt, "step", "optimization"),
    )

    cal = _section(doc, "calibration")
    target = _number(cal, "target_distance_m", "calibration")
    if target <= 0:
        raise ConfigurationError(f"must be > 0, got {target}", "calibration.target_distance_m")

    output_dir = doc.get("output_dir")
    if not isinstance(output_dir, str) or not output_dir:
        raise ConfigurationError(f"must be a non-empty path, got {output_dir!r}", "output_dir")

    config = RunConfig(
        scenario=scenario,
        use_cases=use_cases,
        follower_max_accel=follower_max_accel,
        follower_min_brake=follower_min_brake,
        gravity=gravity,
        leader=leader,
        handlers=_parse_handlers(doc, scenario),
        grid=grid,
        calibration_target=target,
        calibration_use_case=str(cal.get("use_case", use_cases[0].label)),
        sweep=_parse_sweep(doc),
        output_dir=output_dir,
    )
    config.use_case(config.calibration_use_case, "calibration.use_case")
    config.use_case(config.sweep.use_case, "sweep.use_case")
    return config


def load_config(path: Optional[str] = None) -> RunConfig:
    """
    Read a JSON configuration file and merge it over DEFAULT_CONFIG.

    Args:
        path: Configuration file; None runs the study defaults

    Raises:
        ConfigurationError: If the file is not valid JSON or a field is invalid
        OSError: If the file cannot be read
    """
    override: Dict[str, Any] = {}
    if path:
        with open(path, "r", encoding="utf-8") as f:
            try:
                override = json.load(f)
            except json.JSONDecodeError as e:
                raise ConfigurationError(f"invalid JSON in {path}: {e}")
        if not isinstance(override, dict):
            raise ConfigurationError(f"{path} must contain a JSON object")
    return parse_config(_merge(DEFAULT_CONFIG, override))
