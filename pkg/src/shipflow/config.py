"""Key=value configuration files and named geofence presets.

Config files hold one `key = value` pair per line ('#' comments allowed);
keys mirror the long CLI flag names and explicit flags win over file
values. Fence files map names to "lat,lon,radius_km" triples.
"""

from __future__ import annotations

from typing import TextIO

from .errors import ConfigError
from .geo import Geofence, GeoPoint

# Shipped presets. Radii follow the workflows this tool reproduces; the
# coordinates are ordinary gazetteer lookups for the two areas.
FENCE_PRESETS: dict[str, Geofence] = {
    "wuhan": Geofence(GeoPoint(30.59, 114.31), 50.0),
    "canary": Geofence(GeoPoint(28.29, -16.63), 300.0),
}


def parse_kv_lines(source: TextIO) -> dict[str, str]:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(source, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, eq, value = line.partition("=")
        if not eq:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        values[key.strip()] = value.strip()
    return values


def load_config(path: str) -> dict[str, str]:
    try:
        with open(path, encoding="utf-8") as f:
            return parse_kv_lines(f)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc


def parse_fence_value(text: str) -> Geofence:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise ConfigError(f"fence must be 'lat,lon,radius_km', got {text!r}")
    try:
        lat, lon, radius = (float(p) for p in parts)
    except ValueError:
        raise ConfigError(f"non-numeric fence value in {text!r}") from None
    return Geofence(GeoPoint(lat, lon), radius)


def load_fences(path: str) -> dict[str, Geofence]:
    fences = dict(FENCE_PRESETS)
    try:
        with open(path, encoding="utf-8") as f:
            for name, value in parse_kv_lines(f).items():
                fences[name] = parse_fence_value(value)
    except OSError as exc:
        raise ConfigError(f"cannot read fences file {path}: {exc}") from exc
    return fences
