"""YAML config schema for schedules and run parameters.

A config file is a mapping with ``schema_version: 1``, a ``schedule``
section keyed by kind, and an optional ``params`` section of run defaults
that command-line flags may override.  Unknown keys are rejected by name,
so typos fail loudly instead of being silently ignored.
"""

from __future__ import annotations

from typing import IO, Any

import yaml

from .schedules import (DEFAULT_SIGMA2_BOUNDS, BreakSchedule, ConstantSchedule,
                        CyclicalSchedule, PeriodicSchedule, Schedule)

SCHEMA_VERSION = 1

_TUPLE_KEYS = ("phi0", "phi1", "phi2", "sigma2")

_PARAM_KEYS = ("t", "k", "y0", "y1", "max_lag", "tol", "nmax", "seed",
               "paths", "horizon", "length", "burn_in", "workers",
               "innovations", "n")


class ConfigError(ValueError):
    """Malformed config; the message names the offending key."""


def _require_mapping(value, where: str) -> dict:
    if not isinstance(value, dict):
        raise ConfigError(f"{where} must be a mapping")
    return value


def _reject_unknown(mapping: dict, allowed, where: str) -> None:
    for key in mapping:
        if key not in allowed:
            raise ConfigError(f"unknown key {key!r} in {where}")


def _tuple_dict(value, where: str) -> dict:
    mapping = _require_mapping(value, where)
    _reject_unknown(mapping, _TUPLE_KEYS, where)
    out = {}
    for key in _TUPLE_KEYS:
        if key not in mapping:
            raise ConfigError(f"missing key {key!r} in {where}")
        try:
            out[key] = float(mapping[key])
        except (TypeError, ValueError):
            raise ConfigError(f"key {key!r} in {where} must be a number")
    return out


def schedule_from_dict(section: dict) -> Schedule:
    """Build a schedule from the ``schedule`` config section."""
    mapping = _require_mapping(section, "schedule")
    kind = mapping.get("kind")
    common = {"kind"}
    if "sigma2_bounds" in mapping:
        common.add("sigma2_bounds")
        bounds = mapping["sigma2_bounds"]
        if not (isinstance(bounds, (list, tuple)) and len(bounds) == 2):
            raise ConfigError("key 'sigma2_bounds' must be a pair of numbers")
        extra = {"sigma2_bounds": (float(bounds[0]), float(bounds[1]))}
    else:
        extra = {}
    if kind == "constant":
        _reject_unknown(mapping, common | set(_TUPLE_KEYS), "schedule")
        coeffs = {k: mapping[k] for k in _TUPLE_KEYS if k in mapping}
        missing = [k for k in _TUPLE_KEYS if k not in coeffs]
        if missing:
            raise ConfigError(f"missing key {missing[0]!r} in schedule")
        return ConstantSchedule(**coeffs, **extra)
    if kind == "periodic":
        _reject_unknown(mapping, common | {"seasons"}, "schedule")
        seasons = mapping.get("seasons")
        if not isinstance(seasons, list) or not seasons:
            raise ConfigError("key 'seasons' must be a non-empty list")
        tuples = [_tuple_dict(s, f"seasons[{i}]")
                  for i, s in enumerate(seasons)]
        return PeriodicSchedule(tuples, **extra)
    if kind == "cyclical":
        _reject_unknown(mapping, common | {"period", "boundaries", "cycles"},
                        "schedule")
        for key in ("period", "boundaries", "cycles"):
            if key not in mapping:
                raise ConfigError(f"missing key {key!r} in schedule")
        cycles = mapping["cycles"]
        if not isinstance(cycles, list) or not cycles:
            raise ConfigError("key 'cycles' must be a non-empty list")
        tuples = [_tuple_dict(c, f"cycles[{i}]") for i, c in enumerate(cycles)]
        return CyclicalSchedule(int(mapping["period"]),
                                [int(b) for b in mapping["boundaries"]],
                                tuples, **extra)
    if kind == "abrupt-breaks":
        _reject_unknown(mapping,
                        common | {"anchor", "horizon", "offsets", "regimes"},
                        "schedule")
        for key in ("anchor", "horizon", "offsets", "regimes"):
            if key not in mapping:
                raise ConfigError(f"missing key {key!r} in schedule")
        regimes = mapping["regimes"]
        if not isinstance(regimes, list) or not regimes:
            raise ConfigError("key 'regimes' must be a non-empty list")
        tuples = [_tuple_dict(r, f"regimes[{i}]")
                  for i, r in enumerate(regimes)]
        return BreakSchedule(int(mapping["anchor"]), int(mapping["horizon"]),
                             [int(o) for o in mapping["offsets"]],
                             tuples, **extra)
    raise ConfigError(f"key 'kind' must be one of constant, periodic, "
                      f"cyclical, abrupt-breaks (got {kind!r})")


def _tuple_to_dict(tup) -> dict:
    return {k: float(getattr(tup, k)) for k in _TUPLE_KEYS}


def schedule_to_dict(schedule: Schedule) -> dict:
    """Inverse of ``schedule_from_dict`` (function-backed schedules are not
    serializable)."""
    out: dict[str, Any] = {"kind": schedule.kind}
    if isinstance(schedule, ConstantSchedule):
        out.update(_tuple_to_dict(schedule.coefficients))
    elif isinstance(schedule, PeriodicSchedule):
        out["seasons"] = [_tuple_to_dict(s) for s in schedule.seasons]
    elif isinstance(schedule, CyclicalSchedule):
        out["period"] = schedule.period
        out["boundaries"] = list(schedule.boundaries)
        out["cycles"] = [_tuple_to_dict(c) for c in schedule.cycles]
    elif isinstance(schedule, BreakSchedule):
        out["anchor"] = schedule.anchor
        out["horizon"] = schedule.horizon
        out["offsets"] = list(schedule.offsets)
        out["regimes"] = [_tuple_to_dict(r) for r in schedule.regimes]
    else:
        raise ConfigError(f"schedule kind {schedule.kind!r} is not serializable")
    if schedule.sigma2_bounds != DEFAULT_SIGMA2_BOUNDS:
        out["sigma2_bounds"] = [float(b) for b in schedule.sigma2_bounds]
    return out


def parse_config(data) -> tuple[Schedule, dict]:
    """Validate a loaded config mapping; return (schedule, run parameters)."""
    mapping = _require_mapping(data, "config")
    _reject_unknown(mapping, ("schema_version", "schedule", "params"), "config")
    version = mapping.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ConfigError(
            f"key 'schema_version' must be {SCHEMA_VERSION} (got {version!r})")
    if "schedule" not in mapping:
        raise ConfigError("missing key 'schedule' in config")
    schedule = schedule_from_dict(mapping["schedule"])
    params = _require_mapping(mapping.get("params", {}), "params")
    _reject_unknown(params, _PARAM_KEYS, "params")
    return schedule, dict(params)


def load(stream: IO[str] | str) -> tuple[Schedule, dict]:
    """Parse a YAML config from an open stream or a string."""
    try:
        data = yaml.safe_load(stream)
    except yaml.YAMLError as exc:
        raise ConfigError(f"invalid YAML: {exc}")
    return parse_config(data)


def dump(schedule: Schedule, params: dict | None = None) -> str:
    """Serialize a schedule (plus optional run parameters) to YAML text."""
    doc: dict[str, Any] = {"schema_version": SCHEMA_VERSION,
                           "schedule": schedule_to_dict(schedule)}
    if params:
        _reject_unknown(params, _PARAM_KEYS, "params")
        doc["params"] = dict(params)
    return yaml.safe_dump(doc, sort_keys=False)
