"""
Command-line interface: configuration, reports and the commands.
"""

from .config import DEFAULT_CONFIG, RunConfig, SweepSettings, load_config, parse_config
from .commands import (
    main, build_parser, run_study, calibrated_kinematics,
    cmd_simulate, cmd_sweep, cmd_calibrate, cmd_optimize_margin,
    EXIT_OK, EXIT_VALIDATION, EXIT_IO, EXIT_NUMERICAL,
)

__all__ = [
    'DEFAULT_CONFIG', 'RunConfig', 'SweepSettings', 'load_config', 'parse_config',
    'main', 'build_parser', 'run_study', 'calibrated_kinematics',
    'cmd_simulate', 'cmd_sweep', 'cmd_calibrate', 'cmd_optimize_margin',
    'EXIT_OK', 'EXIT_VALIDATION', 'EXIT_IO', 'EXIT_NUMERICAL',
]
