from __future__ import annotations

import csv
import json
import math

import pytest

from src.cli import main
from src.cli.commands import (
    EXIT_IO, EXIT_NUMERICAL, EXIT_OK, EXIT_VALIDATION,
    cmd_calibrate, cmd_optimize_margin, cmd_simulate, cmd_sweep,
)
from src.cli.config import DEFAULT_CONFIG, load_config, parse_config
from src.cli.report import SWEEP_FILE, SWEEP_HEADER, TABLE1_FILE, TABLE1_HEADER
from src.utils.errors import ConfigurationError

HANDLER_ORDER = [
    "worst_case", "static_design_time", "supervisor",
    "adaptive_supervisor", "margin_selector", "adaptive_margin_selector",
]


def _write_config(tmp_path, doc, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


@pytest.fixture
def fast_config(tmp_path):
    """Study defaults with a coarse safety-margin grid."""
    return _write_config(tmp_path, {"optimization": {"min": 0.0, "max": 0.6, "step": 0.05}}, "fast.json")


@pytest.fixture
def worst_only_config(tmp_path):
    return _write_config(tmp_path, {"handlers": [{"kind": "worst_case"}]}, "worst.json")


def _read_csv(path):
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.reader(f))


# ================= Configuration =================

def test_defaults_parse():
    config = load_config()
    assert [h.name for h in config.handlers] == HANDLER_ORDER
    assert [uc.label for uc in config.use_cases] == ["A", "B"]
    assert config.follower_min_brake is None
    assert config.scenario.thresholds.by_context == {True: 1e-5, False: 1e-6}


def test_partial_override_keeps_other_defaults(tmp_path):
    config = load_config(_write_config(tmp_path, {"scenario": {"supervision_probability": 0.25}}))
    assert config.scenario.supervision_probability == 0.25
    assert config.scenario.velocities_kmh == (60.0, 65.0, 70.0, 75.0, 80.0)


def test_adaptive_handler_without_threshold_uses_scenario_thresholds():
    doc = dict(DEFAULT_CONFIG, handlers=[{"kind": "adaptive_margin_selector"}, {"kind": "margin_selector"}])
    adaptive, fixed = parse_config(doc).handlers
    assert adaptive.policy.by_context == {True: 1e-5, False: 1e-6}
    assert fixed.policy.u_acceptable == 1e-6


def test_invalid_field_is_named(tmp_path):
    path = _write_config(tmp_path, {"scenario": {"supervision_probability": 1.5}})
    with pytest.raises(ConfigurationError) as exc:
        load_config(path)
    assert exc.value.field == "scenario.supervision_probability"


@pytest.mark.parametrize("label", [5, "", "   ", ["a"]])
def test_handler_label_must_be_text(label):
    doc = dict(DEFAULT_CONFIG, handlers=[{"kind": "worst_case", "label": label}])
    with pytest.raises(ConfigurationError) as exc:
        parse_config(doc)
    assert exc.value.field == "handlers[0].label"


def test_custom_handler_label_is_reported(tmp_path, capsys):
    path = _write_config(tmp_path, {"handlers": [{"kind": "worst_case", "label": "baseline"}]})
    assert cmd_simulate(path, str(tmp_path / "out")) == EXIT_OK
    rows = _read_csv(tmp_path / "out" / TABLE1_FILE)
    assert [r[0] for r in rows[1:]] == ["baseline", "baseline"]
    assert "baseline" in capsys.readouterr().out


def test_numeric_label_is_rejected_before_any_output(tmp_path):
    path = _write_config(tmp_path, {"handlers": [{"kind": "worst_case", "label": 5}]})
    assert cmd_simulate(path, str(tmp_path / "out")) == EXIT_VALIDATION
    assert not (tmp_path / "out").exists()


def test_unknown_handler_is_named():
    doc = dict(DEFAULT_CONFIG, handlers=[{"kind": "oracle"}])
    with pytest.raises(ConfigurationError) as exc:
        parse_config(doc)
    assert exc.value.field == "handlers[0].kind"


# ================= simulate =================

def test_simulate_writes_table(tmp_path, fast_config, capsys):
    out = tmp_path / "out"
    assert cmd_simulate(fast_config, str(out)) == EXIT_OK

    rows = _read_csv(out / TABLE1_FILE)
    assert rows[0] == TABLE1_HEADER
    body = rows[1:]
    assert len(body) == 12
    assert [r[1] for r in body] == ["A"] * 6 + ["B"] * 6
    assert [r[0] for r in body] == HANDLER_ORDER * 2
    for _, _, distance, mu in body:
        assert math.isfinite(float(distance))
        assert 0.1 <= float(mu) <= 1.1

    worst_a = body[0]
    assert float(worst_a[2]) == pytest.approx(14.670, abs=0.01)
    assert float(worst_a[3]) == pytest.approx(1.1, abs=1e-12)

    printed = capsys.readouterr()
    assert "worst_case" in printed.out
    assert "Wrote" in printed.err


def test_simulate_is_byte_deterministic(tmp_path, fast_config):
    first, second, threaded = tmp_path / "a", tmp_path / "b", tmp_path / "c"
    assert cmd_simulate(fast_config, str(first)) == EXIT_OK
    assert cmd_simulate(fast_config, str(second)) == EXIT_OK
    assert cmd_simulate(fast_config, str(threaded), workers=3) == EXIT_OK
    reference = (first / TABLE1_FILE).read_bytes()
    assert (second / TABLE1_FILE).read_bytes() == reference
    assert (threaded / TABLE1_FILE).read_bytes() == reference


def test_simulate_rejects_invalid_configuration(tmp_path, capsys):
    path = _write_config(tmp_path, {"scenario": {"supervision_probability": 1.5}})
    assert cmd_simulate(path, str(tmp_path / "out")) == EXIT_VALIDATION
    assert "scenario.supervision_probability" in capsys.readouterr().err
    assert not (tmp_path / "out").exists()


def test_simulate_rejects_malformed_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    assert cmd_simulate(str(path), str(tmp_path / "out")) == EXIT_VALIDATION


def test_simulate_reports_unreadable_config_file(tmp_path, capsys):
    assert cmd_simulate(str(tmp_path / "missing.json"), str(tmp_path / "out")) == EXIT_IO
    assert "I/O error" in capsys.readouterr().err
    assert cmd_simulate(str(tmp_path), str(tmp_path / "out")) == EXIT_IO


def test_simulate_rejects_unknown_handler(tmp_path):
    path = _write_config(tmp_path, {"handlers": [{"kind": "oracle"}]})
    assert cmd_simulate(path, str(tmp_path / "out")) == EXIT_VALIDATION


def test_simulate_reports_unwritable_output(tmp_path, worst_only_config):
    blocker = tmp_path / "file"
    blocker.write_text("", encoding="utf-8")
    assert cmd_simulate(worst_only_config, str(blocker / "out")) == EXIT_IO


# ================= sweep =================

def test_sweep_writes_rows(tmp_path, worst_only_config):
    out = tmp_path / "sweep"
    code = cmd_sweep(worst_only_config, str(out), u_min=1e-6, u_max=1e-2, points=2,
                     sigmas=[0.05], mus=[0.7, 0.9])
    assert code == EXIT_OK
    rows = _read_csv(out / SWEEP_FILE)
    assert rows[0] == SWEEP_HEADER
    # three default sweep handlers x two mus x one sigma x two thresholds
    assert len(rows) - 1 == 3 * 2 * 1 * 2
    assert [float(r[3]) for r in rows[1:3]] == [1e-6, 1e-2]


def test_sweep_selector_saturates(tmp_path, worst_only_config):
    out = tmp_path / "sweep"
    assert cmd_sweep(worst_only_config, str(out), u_min=1e-6, u_max=1e-5, points=2,
                     sigmas=[0.1], mus=[0.9]) == EXIT_OK
    rows = {(r[0], float(r[3])): float(r[5]) for r in _read_csv(out / SWEEP_FILE)[1:]}
    assert rows[("margin_selector", 1e-6)] == pytest.approx(rows[("worst_case", 1e-6)], rel=1e-3)


@pytest.mark.parametrize("kwargs", [
    {"u_min": 1e-2, "u_max": 1e-6},
    {"u_min": 0.0, "u_max": 1e-2},
    {"points": 1},
    {"sigmas": [0.0]},
    {"mus": [1.5]},
])
def test_sweep_rejects_bad_arguments(tmp_path, worst_only_config, kwargs):
    assert cmd_sweep(worst_only_config, str(tmp_path / "sweep"), **kwargs) == EXIT_VALIDATION


# ================= calibrate =================

def test_calibrate_prints_brake(worst_only_config, capsys):
    assert cmd_calibrate(worst_only_config) == EXIT_OK
    assert float(capsys.readouterr().out.strip()) == pytest.approx(6.41, abs=0.05)


def test_calibrate_rejects_negative_target(worst_only_config):
    assert cmd_calibrate(worst_only_config, target=-1.0) == EXIT_VALIDATION


def test_calibrate_reports_unattainable_target(worst_only_config):
    assert cmd_calibrate(worst_only_config, target=1e7) == EXIT_NUMERICAL


def test_calibrate_round_trip(tmp_path, capsys):
    fixed = _write_config(tmp_path, {"handlers": [{"kind": "worst_case"}],
                                     "kinematics": {"follower_min_brake": 7.0}}, "fixed.json")
    assert cmd_simulate(fixed, str(tmp_path / "out")) == EXIT_OK
    worst_a = float(_read_csv(tmp_path / "out" / TABLE1_FILE)[1][2])
    capsys.readouterr()

    assert cmd_calibrate(fixed, target=worst_a) == EXIT_OK
    assert capsys.readouterr().out.strip() == "7.0000"


# ================= optimize-margin =================

def test_optimize_margin_prints_one_line_per_supervisor(fast_config, capsys):
    assert cmd_optimize_margin(fast_config) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 4
    assert lines[0].startswith("supervisor")
    assert all("delta_mu=" in line for line in lines)


# ================= main =================

def test_main_dispatches_calibrate(worst_only_config, capsys):
    assert main(["calibrate", "--config", worst_only_config, "--target", "14.67"]) == EXIT_OK
    assert float(capsys.readouterr().out) == pytest.approx(6.41, abs=0.05)


def test_main_dispatches_sweep(tmp_path, worst_only_config):
    out = tmp_path / "cli"
    argv = ["sweep", "--config", worst_only_config, "--out", str(out),
            "--u-min", "1e-6", "--u-max", "1e-3", "--points", "3", "--sigma", "0.05", "--mu", "0.7"]
    assert main(argv) == EXIT_OK
    assert len(_read_csv(out / SWEEP_FILE)) == 1 + 3 * 3


def test_main_requires_a_command():
    with pytest.raises(SystemExit):
        main([])
