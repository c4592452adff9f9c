"""Trajectory cleaning: four composable passes over a TrackSet.

The rules, in the order they are applied:

  1. drop ships whose MMSI has fewer than 9 decimal digits;
  2. drop ships observed with two or more distinct vessel type codes
     (one identity shared by several hulls);
  3. drop readings that moved less than 0.001 degrees in BOTH axes
     relative to the last kept reading (stationary-noise collapse);
  4. drop ships outright when any consecutive pair of readings implies a
     per-axis rate above 1.7 degrees per hour (~100 knots) -- or any
     displacement in zero elapsed time.

Longitude differences are wrapped at the antimeridian so a hop across
+/-180 is measured short way round. Thresholds live in FilterConfig;
every pass reports how much it removed and why.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import ConfigError
from .messages import VesselRecord
from .tracks import Track, TrackSet

RULE_INVALID_MMSI = "invalid_mmsi"
RULE_CONFLICTING_TYPE = "conflicting_type"
RULE_MICRO_MOVES = "micro_moves"
RULE_JUMPS = "jumps"
RULE_ORDER = (RULE_INVALID_MMSI, RULE_CONFLICTING_TYPE, RULE_MICRO_MOVES, RULE_JUMPS)


@dataclass(slots=True)
class FilterConfig:
    min_mmsi_digits: int = 9
    micro_move_threshold_deg: float = 0.001
    max_jump_rate_deg_per_hr: float = 1.7
    drop_conflicting_vessel_types: bool = True

    def __post_init__(self) -> None:
        if self.min_mmsi_digits <= 0:
            raise ConfigError("min_mmsi_digits must be positive")
        if self.micro_move_threshold_deg <= 0:
            raise ConfigError("micro_move_threshold_deg must be positive")
        if self.max_jump_rate_deg_per_hr <= 0:
            raise ConfigError("max_jump_rate_deg_per_hr must be positive")


@dataclass(slots=True)
class RuleDrops:
    ships: int = 0
    readings: int = 0


@dataclass(slots=True)
class FilterReport:
    input_ships: int = 0
    input_readings: int = 0
    kept_ships: int = 0
    kept_readings: int = 0
    rules: dict[str, RuleDrops] = field(default_factory=dict)

    def rule(self, name: str) -> RuleDrops:
        if name not in self.rules:
            self.rules[name] = RuleDrops()
        return self.rules[name]

    def as_items(self) -> list[tuple[str, int]]:
        items = [
            ("input.ships", self.input_ships),
            ("input.readings", self.input_readings),
        ]
        for name in RULE_ORDER:
            drops = self.rules.get(name, RuleDrops())
            items.append((f"{name}.ships_dropped", drops.ships))
            items.append((f"{name}.readings_dropped", drops.readings))
        items.append(("kept.ships", self.kept_ships))
        items.append(("kept.readings", self.kept_readings))
        return items

    def to_kv_text(self) -> str:
        return "\n".join(f"{k}={v}" for k, v in self.as_items()) + "\n"

    def to_csv_text(self) -> str:
        lines = ["metric,value"]
        lines += [f"{k},{v}" for k, v in self.as_items()]
        return "\n".join(lines) + "\n"


def wrapped_lon_delta(lon_a: float, lon_b: float) -> float:
    """Absolute longitude difference measured the short way round (<= 180)."""
    d = abs(lon_a - lon_b) % 360.0
    return 360.0 - d if d > 180.0 else d


def _new_report(ts: TrackSet) -> FilterReport:
    report = FilterReport(input_ships=len(ts.tracks), input_readings=ts.reading_count)
    return report


def _finish(report: FilterReport, out: TrackSet) -> None:
    report.kept_ships = len(out.tracks)
    report.kept_readings = out.reading_count


def filter_invalid_mmsi(
    ts: TrackSet, cfg: FilterConfig
) -> tuple[TrackSet, FilterReport]:
    """Drop ships whose MMSI is shorter than the configured digit count."""
    report = _new_report(ts)
    floor = 10 ** (cfg.min_mmsi_digits - 1)
    tracks: dict[int, Track] = {}
    drops = report.rule(RULE_INVALID_MMSI)
    for mmsi, track in ts.tracks.items():
        if mmsi >= floor:
            tracks[mmsi] = track
        else:
            drops.ships += 1
            drops.readings += len(track.readings)
    out = TrackSet(tracks=tracks, provenance=ts.provenance, stats=ts.stats)
    _finish(report, out)
    return out, report


def conflicting_mmsis(
    static_records: Iterable[VesselRecord] | Mapping[int, set[int]] | None,
) -> set[int]:
    """MMSIs observed with two or more distinct vessel type codes."""
    if static_records is None:
        return set()
    if isinstance(static_records, Mapping):
        return {m for m, types in static_records.items() if len(types) >= 2}
    seen: dict[int, set[int]] = {}
    for record in static_records:
        seen.setdefault(record.mmsi, set()).add(record.vessel_type_code)
    return {m for m, types in seen.items() if len(types) >= 2}


def filter_conflicting_vessel_type(
    ts: TrackSet,
    static_records: Iterable[VesselRecord] | Mapping[int, set[int]] | None,
) -> tuple[TrackSet, FilterReport]:
    """Drop ships whose MMSI was observed with multiple vessel types.

    Ships with no static record at all pass: absence is not conflict.
    """
    report = _new_report(ts)
    conflicted = conflicting_mmsis(static_records)
    tracks: dict[int, Track] = {}
    drops = report.rule(RULE_CONFLICTING_TYPE)
    for mmsi, track in ts.tracks.items():
        if mmsi in conflicted:
            drops.ships += 1
            drops.readings += len(track.readings)
        else:
            tracks[mmsi] = track
    out = TrackSet(tracks=tracks, provenance=ts.provenance, stats=ts.stats)
    _finish(report, out)
    return out, report


def _micro_move_track(track: Track, threshold: float) -> tuple[Track, int]:
    kept = []
    last_lat = last_lon = None
    dropped = 0
    for r in track.readings:
        if r.lat is None:
            kept.append(r)  # no position: not a geospatial candidate
            continue
        if last_lat is not None:
            if (
                abs(r.lat - last_lat) < threshold
                and wrapped_lon_delta(r.lon, last_lon) < threshold
            ):
                dropped += 1
                continue
        kept.append(r)
        last_lat, last_lon = r.lat, r.lon
    if dropped == 0:
        return track, 0
    return Track(track.mmsi, kept, track.vessel), dropped


def drop_micro_moves(
    ts: TrackSet, cfg: FilterConfig
) -> tuple[TrackSet, FilterReport]:
    """Drop readings that barely moved on both axes since the last kept one.

    Comparing against the last KEPT reading (not the last seen) collapses a
    slow drift into one point per dwell instead of letting it creep through.
    """
    report = _new_report(ts)
    drops = report.rule(RULE_MICRO_MOVES)
    threshold = cfg.micro_move_threshold_deg
    tracks: dict[int, Track] = {}
    for mmsi, track in ts.tracks.items():
        new_track, dropped = _micro_move_track(track, threshold)
        drops.readings += dropped
        tracks[mmsi] = new_track
    out = TrackSet(tracks=tracks, provenance=ts.provenance, stats=ts.stats)
    _finish(report, out)
    return out, report


def _track_has_jump(track: Track, max_rate: float) -> bool:
    prev = None
    for r in track.readings:
        if r.lat is None:
            continue
        if prev is not None:
            dlat = abs(r.lat - prev.lat)
            dlon = wrapped_lon_delta(r.lon, prev.lon)
            displacement = dlat if dlat > dlon else dlon
            dt_hours = (r.timestamp - prev.timestamp) / 3600.0
            if dt_hours <= 0.0:
                if displacement > 0.0:
                    return True  # moved with no time elapsed
            elif displacement / dt_hours > max_rate:
                return True
        prev = r
    return False


def filter_speed_jumps(
    ts: TrackSet, cfg: FilterConfig
) -> tuple[TrackSet, FilterReport]:
    """Drop entire ships whose position jumped faster than the cap."""
    report = _new_report(ts)
    drops = report.rule(RULE_JUMPS)
    max_rate = cfg.max_jump_rate_deg_per_hr
    tracks: dict[int, Track] = {}
    for mmsi, track in ts.tracks.items():
        if _track_has_jump(track, max_rate):
            drops.ships += 1
            drops.readings += len(track.readings)
        else:
            tracks[mmsi] = track
    out = TrackSet(tracks=tracks, provenance=ts.provenance, stats=ts.stats)
    _finish(report, out)
    return out, report


def clean(
    ts: TrackSet,
    cfg: FilterConfig | None = None,
    static_records: Iterable[VesselRecord] | Mapping[int, set[int]] | None = None,
) -> tuple[TrackSet, FilterReport]:
    """Run all four passes in order and aggregate their reports."""
    cfg = cfg or FilterConfig()
    report = _new_report(ts)
    out, r1 = filter_invalid_mmsi(ts, cfg)
    report.rules[RULE_INVALID_MMSI] = r1.rule(RULE_INVALID_MMSI)
    if cfg.drop_conflicting_vessel_types:
        out, r2 = filter_conflicting_vessel_type(out, static_records)
        report.rules[RULE_CONFLICTING_TYPE] = r2.rule(RULE_CONFLICTING_TYPE)
    out, r3 = drop_micro_moves(out, cfg)
    report.rules[RULE_MICRO_MOVES] = r3.rule(RULE_MICRO_MOVES)
    out, r4 = filter_speed_jumps(out, cfg)
    report.rules[RULE_JUMPS] = r4.rule(RULE_JUMPS)
    _finish(report, out)
    return out, report
