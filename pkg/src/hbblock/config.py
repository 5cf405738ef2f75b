"""Scenario configuration: flat ``key = value`` documents.

Keys are dotted (``geometry.w_u``, ``cell.speed_kmh``, ...); unknown keys
are rejected by name, and a partial document is completed from the reference
defaults below.  Unit conversions happen once at parse time: speeds arrive
in km/h, slot lengths in milliseconds.  The parsed object keeps the original
config-unit values so that ``dump_config`` round-trips exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .geometry import BodyGeometry, SidewalkCell
from .scenario import SidewalkScenario
from .stochastics import FrameStructure, PedestrianProcess

__all__ = ["ConfigError", "ScenarioConfig", "parse_config", "load_config", "dump_config"]


class ConfigError(ValueError):
    """Invalid configuration document (unknown key, bad value, broken invariant)."""


_EQ13_MODES = ("sum", "literal")

# key -> (type tag, default in config units); order defines the dump order
_SCHEMA: dict[str, tuple[str, object]] = {
    "geometry.w_u": ("float", 0.3),
    "geometry.h_u": ("float", 1.7),
    "geometry.d": ("float", 0.15),
    "geometry.h_d": ("float", 1.5),
    "geometry.w_p": ("float", 0.3),
    "geometry.h_p": ("float", 1.7),
    "geometry.ap_height": ("float", 3.0),
    "cell.length": ("float", 15.0),
    "cell.width": ("float", 2.0),
    "cell.speed_kmh": ("float", 3.0),
    "process.lambda0": ("float", 0.3),
    "process.tau_min": ("float", 0.5),
    "process.tau_max": ("float", 2.0),
    "frame.t1_ms": ("float", 4.8),
    "frame.t2_ms": ("float", 0.1),
    "frame.t3_ms": ("float", 0.1),
    "options.eq8_clamp": ("bool", True),
    "options.eq13_mode": ("mode", "sum"),
    "options.grid_resolution_m": ("float", 0.01),
}


@dataclass(frozen=True)
class ScenarioConfig:
    """Parsed configuration: domain scenario plus evaluation options.

    ``document`` holds the effective key/value map in config units and is
    the source of truth for :func:`dump_config`.
    """

    scenario: SidewalkScenario
    eq8_clamp: bool
    eq13_mode: str
    grid_resolution_m: float
    document: dict = field(compare=False, repr=False, default_factory=dict)

    def replace_options(
        self,
        eq8_clamp: bool | None = None,
        eq13_mode: str | None = None,
    ) -> "ScenarioConfig":
        """Copy with command-line overrides applied."""
        document = dict(self.document)
        if eq8_clamp is not None:
            document["options.eq8_clamp"] = eq8_clamp
        if eq13_mode is not None:
            if eq13_mode not in _EQ13_MODES:
                raise ConfigError(f"options.eq13_mode: expected one of {_EQ13_MODES}")
            document["options.eq13_mode"] = eq13_mode
        return _build(document)


def _parse_value(key: str, token: str):
    kind = _SCHEMA[key][0]
    if kind == "float":
        try:
            value = float(token)
        except ValueError:
            raise ConfigError(f"{key}: not a number: {token!r}") from None
        if not math.isfinite(value):
            raise ConfigError(f"{key}: value must be finite")
        return value
    if kind == "bool":
        lowered = token.lower()
        if lowered in ("true", "1", "yes"):
            return True
        if lowered in ("false", "0", "no"):
            return False
        raise ConfigError(f"{key}: expected true/false, got {token!r}")
    if token not in _EQ13_MODES:
        raise ConfigError(f"{key}: expected one of {_EQ13_MODES}, got {token!r}")
    return token


def parse_config(text: str) -> ScenarioConfig:
    """Parse a config document; raises :class:`ConfigError` with the key named."""
    document = {key: default for key, (_, default) in _SCHEMA.items()}
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, token = line.partition("=")
        key, token = key.strip(), token.strip()
        if key not in _SCHEMA:
            raise ConfigError(f"unknown configuration key: {key!r}")
        if key in seen:
            raise ConfigError(f"duplicate configuration key: {key!r}")
        seen.add(key)
        document[key] = _parse_value(key, token)
    return _build(document)


def _build(document: dict) -> ScenarioConfig:
    try:
        geom = BodyGeometry(
            user_width=document["geometry.w_u"],
            user_height=document["geometry.h_u"],
            device_distance=document["geometry.d"],
            device_height=document["geometry.h_d"],
            pedestrian_width=document["geometry.w_p"],
            pedestrian_height=document["geometry.h_p"],
            ap_height=document["geometry.ap_height"],
        )
    except ValueError as exc:
        raise ConfigError(f"geometry.*: {exc}") from None
    try:
        cell = SidewalkCell(
            length=document["cell.length"],
            width=document["cell.width"],
            speed=document["cell.speed_kmh"] / 3.6,
        )
    except ValueError as exc:
        raise ConfigError(f"cell.*: {exc}") from None
    try:
        process = PedestrianProcess(
            density=document["process.lambda0"],
            min_duration=document["process.tau_min"],
            max_duration=document["process.tau_max"],
        )
    except ValueError as exc:
        raise ConfigError(f"process.*: {exc}") from None
    try:
        frame = FrameStructure(
            downlink=document["frame.t1_ms"] / 1e3,
            guard=document["frame.t2_ms"] / 1e3,
            uplink=document["frame.t3_ms"] / 1e3,
        )
    except ValueError as exc:
        raise ConfigError(f"frame.*: {exc}") from None
    try:
        scenario = SidewalkScenario(cell=cell, geom=geom, process=process, frame=frame)
    except ValueError as exc:
        raise ConfigError(f"cell./frame.: {exc}") from None
    resolution = document["options.grid_resolution_m"]
    if resolution <= 0:
        raise ConfigError("options.grid_resolution_m: must be positive")
    return ScenarioConfig(
        scenario=scenario,
        eq8_clamp=document["options.eq8_clamp"],
        eq13_mode=document["options.eq13_mode"],
        grid_resolution_m=resolution,
        document=dict(document),
    )


def load_config(path: str | None) -> ScenarioConfig:
    """Read a config file; ``None`` yields the reference defaults."""
    if path is None:
        return parse_config("")
    with open(path, "r", encoding="utf-8") as handle:
        return parse_config(handle.read())


def dump_config(config: ScenarioConfig) -> str:
    """Canonical document for a parsed configuration (round-trip stable)."""
    lines = []
    for key in _SCHEMA:
        value = config.document[key]
        if isinstance(value, bool):
            token = "true" if value else "false"
        elif isinstance(value, float):
            token = repr(value)
        else:
            token = str(value)
        lines.append(f"{key} = {token}")
    return "\n".join(lines) + "\n"
