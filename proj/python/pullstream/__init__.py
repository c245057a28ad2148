"""Pull-based adaptive video streaming simulator (Python bindings)."""

import json as _json

from ._pullstream import (
    ConfigError,
    SequencingError,
    brute_force_schedule,
    choose_auxiliary,
    next_backlog,
    path_gain,
    run_to_csv,
    schedule_mimo,
    select_quality,
    siso_rate,
    update_virtual_queue,
    validate_config,
    window_max_delay,
    zf_rate,
)
from ._pullstream import run_simulation as _run_simulation


def run_simulation(config):
    """Run one simulation. `config` is a dict or a JSON string."""
    if not isinstance(config, str):
        config = _json.dumps(config)
    return _run_simulation(config)


__all__ = [
    "ConfigError",
    "SequencingError",
    "brute_force_schedule",
    "choose_auxiliary",
    "next_backlog",
    "path_gain",
    "run_simulation",
    "run_to_csv",
    "schedule_mimo",
    "select_quality",
    "siso_rate",
    "update_virtual_queue",
    "validate_config",
    "window_max_delay",
    "zf_rate",
]
