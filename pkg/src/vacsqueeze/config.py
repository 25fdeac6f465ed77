"""Run configuration: YAML files, one versioned defaults table, validation.

Configs are nested-key YAML (human-readable and commentable). Every command
merges its block of ``DEFAULTS`` with the user file and CLI overrides, writes
the resolved result next to its outputs, and a rerun from that resolved file
reproduces the outputs byte for byte.
"""

from __future__ import annotations

import copy
from pathlib import Path

import yaml

from .errors import ConfigError

CONFIG_VERSION = 1

DEFAULTS: dict = {
    "ground-state": {
        "rabi": {"omega": None, "Omega": None, "g": None},
        "truncation": {"tail_tol": 1e-10, "max_dim": 1024},
        "seed": 12345,
    },
    "figure1": {
        "squeeze": {"r": None},
        "omega": 1.0,
        "times": None,  # explicit list of panel times; defaults to quarter-period steps
        "grid": {"resolution": 201, "widths": 4.0},
        "trace": {"count": 129},  # variance-trace samples over one full period
        "seed": 12345,
    },
    "quench": {
        "rabi": {"omega": None, "Omega": None, "g": None},
        "source": "effective",
        "times": {"start": 0.0, "stop": None, "count": 100},  # stop defaults to 2 periods
        "adiabatic": None,  # optional {ramp_duration, steps}
        "seed": 12345,
    },
    "spectrum-test": {
        "modes": {"count": 32, "min": 0.5, "max": 2.0},
        "profile": {"kind": "gaussian-bump", "r_max": 0.3, "center": 1.2, "width": 0.35, "floor": 0.0},
        "counts_profile": None,  # optional second profile feeding only the photon counts
        "detector": {"shots": 100000, "efficiency": 1.0, "dark_rate": 0.001, "extra_noise_variance": 0.0},
        "homodyne_bins": 16,
        "thresholds": {"correlation": 0.8, "p_value": 0.05, "power_sigma": 3.0, "min_modes": 8},
        "dark_subtraction": {"mode": "known", "reference_modes": []},
        "seed": 20250809,
    },
    "selftest": {
        "seed": 12345,
    },
}

_PROFILE_KEYS = {
    "flat": {"kind", "r"},
    "gaussian-bump": {"kind", "r_max", "center", "width", "floor"},
    "power-law": {"kind", "r_ref", "exponent", "reference_frequency"},
    "user-table": {"kind", "path"},
}

_META_KEYS = {"command", "config_version"}


def load_yaml(path) -> dict:
    try:
        with open(path, encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}")
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(f"config root must be a mapping, got {type(data).__name__}")
    return data


def deep_merge(base: dict, override: dict) -> dict:
    out = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = deep_merge(out[key], value)
        else:
            out[key] = copy.deepcopy(value)
    return out


def _require_number(cfg: dict, block: str, key: str, positive=False, allow_zero=True):
    val = cfg.get(key)
    if val is None:
        raise ConfigError(f"missing required field {block}.{key}")
    if not isinstance(val, (int, float)) or isinstance(val, bool):
        raise ConfigError(f"{block}.{key} must be a number, got {val!r}")
    if positive and (val < 0 or (val == 0 and not allow_zero)):
        raise ConfigError(f"{block}.{key} must be {'>= 0' if allow_zero else '> 0'}, got {val}")
    return float(val)


def _check_keys(block: dict, allowed: set, name: str) -> None:
    unknown = set(block) - allowed
    if unknown:
        raise ConfigError(f"unknown field(s) in {name}: {sorted(unknown)}")


def _validate_rabi(cfg: dict) -> None:
    rabi = cfg.get("rabi")
    if not isinstance(rabi, dict):
        raise ConfigError("missing required block 'rabi' ({omega, Omega, g})")
    _check_keys(rabi, {"omega", "Omega", "g"}, "rabi")
    _require_number(rabi, "rabi", "omega", positive=True, allow_zero=False)
    _require_number(rabi, "rabi", "Omega", positive=True, allow_zero=False)
    _require_number(rabi, "rabi", "g", positive=True)


def _validate_profile(profile, name: str) -> None:
    if not isinstance(profile, dict):
        raise ConfigError(f"{name} must be a mapping with a 'kind' field")
    kind = profile.get("kind")
    if kind not in _PROFILE_KEYS:
        raise ConfigError(f"{name}.kind must be one of {sorted(_PROFILE_KEYS)}, got {kind!r}")
    _check_keys(profile, _PROFILE_KEYS[kind], name)
    if kind == "flat":
        _require_number(profile, name, "r", positive=True)
    elif kind == "gaussian-bump":
        _require_number(profile, name, "r_max", positive=True)
        _require_number(profile, name, "center")
        _require_number(profile, name, "width", positive=True, allow_zero=False)
    elif kind == "power-law":
        _require_number(profile, name, "r_ref", positive=True)
        _require_number(profile, name, "exponent")
    elif kind == "user-table":
        if not profile.get("path"):
            raise ConfigError(f"{name}.path is required for user-table profiles")


def validate(command: str, cfg: dict) -> None:
    if command not in DEFAULTS:
        raise ConfigError(f"unknown command {command!r}")
    allowed = set(DEFAULTS[command]) | _META_KEYS
    _check_keys(cfg, allowed, command)

    if command in ("ground-state", "quench"):
        _validate_rabi(cfg)
    if command == "figure1":
        squeeze = cfg.get("squeeze")
        if not isinstance(squeeze, dict):
            raise ConfigError("missing required block 'squeeze' ({r})")
        _check_keys(squeeze, {"r"}, "squeeze")
        _require_number(squeeze, "squeeze", "r", positive=True)
        _require_number(cfg, command, "omega", positive=True, allow_zero=False)
        if cfg.get("times") is not None and not isinstance(cfg["times"], list):
            raise ConfigError("figure1.times must be a list of times")
        grid = cfg.get("grid", {})
        _check_keys(grid, {"resolution", "widths"}, "grid")
    if command == "quench":
        if cfg.get("source") not in ("effective", "exact"):
            raise ConfigError("quench.source must be 'effective' or 'exact'")
        times = cfg.get("times")
        if not isinstance(times, dict):
            raise ConfigError("quench.times must be a {start, stop, count} mapping")
        _check_keys(times, {"start", "stop", "count"}, "times")
        adiabatic = cfg.get("adiabatic")
        if adiabatic is not None:
            _check_keys(adiabatic, {"ramp_duration", "steps"}, "adiabatic")
            _require_number(adiabatic, "adiabatic", "ramp_duration", positive=True, allow_zero=False)
            if not isinstance(adiabatic.get("steps"), int):
                raise ConfigError("adiabatic.steps must be an integer")
    if command == "spectrum-test":
        modes = cfg.get("modes", {})
        _check_keys(modes, {"count", "min", "max"}, "modes")
        _validate_profile(cfg.get("profile"), "profile")
        if cfg.get("counts_profile") is not None:
            _validate_profile(cfg["counts_profile"], "counts_profile")
        det = cfg.get("detector", {})
        _check_keys(det, {"shots", "efficiency", "dark_rate", "extra_noise_variance"}, "detector")
        if not isinstance(det.get("shots"), int) or det["shots"] < 1:
            raise ConfigError("detector.shots must be a positive integer")
        thr = cfg.get("thresholds", {})
        _check_keys(thr, {"correlation", "p_value", "power_sigma", "min_modes"}, "thresholds")
        dark = cfg.get("dark_subtraction", {})
        _check_keys(dark, {"mode", "reference_modes"}, "dark_subtraction")
        if dark.get("mode") not in ("known", "reference"):
            raise ConfigError("dark_subtraction.mode must be 'known' or 'reference'")
    seed = cfg.get("seed")
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ConfigError(f"seed must be an integer, got {seed!r}")


# Union-typed blocks are replaced wholesale by user values, never key-merged
# with their default variant (a user-table profile must not inherit bump keys).
_REPLACE_BLOCKS = {"spectrum-test": {"profile", "counts_profile"}}


def resolve(command: str, file_config: dict | None, seed_override: int | None = None) -> dict:
    """Merge defaults with a config file and CLI overrides, then validate."""
    if command not in DEFAULTS:
        raise ConfigError(f"unknown command {command!r}")
    file_config = file_config or {}
    cfg = deep_merge(DEFAULTS[command], file_config)
    for key in _REPLACE_BLOCKS.get(command, set()) & set(file_config):
        cfg[key] = copy.deepcopy(file_config[key])
    if seed_override is not None:
        cfg["seed"] = seed_override
    cfg["command"] = command
    cfg["config_version"] = CONFIG_VERSION
    validate(command, cfg)
    return cfg


def dump_yaml(cfg: dict, path) -> None:
    text = yaml.safe_dump(cfg, sort_keys=True, default_flow_style=False)
    Path(path).write_text(text, encoding="utf-8")
