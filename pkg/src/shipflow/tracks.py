"""The cleaned-data model: per-MMSI time-ordered tracks.

Readings come from the decoder's CSV or from provider exports with their
own column names; the mapping is configuration. Tracks are kept in a
canonical order (timestamp first, then coordinates) so that merging and
re-ingesting are stable, and exact duplicate rows collapse to one.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Iterable, TextIO

from .errors import ConfigError
from .messages import PositionReading, VesselRecord

DEFAULT_COLUMNS = {
    "mmsi": "mmsi",
    "timestamp": "timestamp",
    "lat": "lat",
    "lon": "lon",
    "sog": "sog_knots",
    "cog": "cog_deg",
    "msg_type": "msg_type",
}
REQUIRED_FIELDS = ("mmsi", "timestamp", "lat", "lon", "sog")


def parse_timestamp(text: str) -> float:
    """Epoch seconds from either a number or an RFC 3339 string."""
    try:
        return float(text)
    except ValueError:
        pass
    iso = text.strip()
    if iso.endswith(("Z", "z")):
        iso = iso[:-1] + "+00:00"
    dt = datetime.fromisoformat(iso)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.timestamp()


def _sort_key(r: PositionReading):
    # total order: None coordinates sort after any real value at the same time
    return (
        r.timestamp,
        r.lat if r.lat is not None else 1e9,
        r.lon if r.lon is not None else 1e9,
        r.sog_knots if r.sog_knots is not None else -1.0,
        r.cog_deg if r.cog_deg is not None else -1.0,
        r.msg_type,
    )


@dataclass(slots=True)
class IngestStats:
    rows_in: int = 0
    readings_kept: int = 0
    dropped: dict[str, int] = field(default_factory=dict)

    def drop(self, reason: str, n: int = 1) -> None:
        self.dropped[reason] = self.dropped.get(reason, 0) + n

    @property
    def dropped_total(self) -> int:
        return sum(self.dropped.values())

    def merged_with(self, other: "IngestStats") -> "IngestStats":
        out = IngestStats(
            rows_in=self.rows_in + other.rows_in,
            readings_kept=self.readings_kept + other.readings_kept,
            dropped=dict(self.dropped),
        )
        for reason, n in other.dropped.items():
            out.drop(reason, n)
        return out


@dataclass(slots=True)
class Track:
    mmsi: int
    readings: list[PositionReading] = field(default_factory=list)
    vessel: VesselRecord | None = None


@dataclass(slots=True)
class TrackSet:
    tracks: dict[int, Track] = field(default_factory=dict)
    provenance: str = ""
    stats: IngestStats = field(default_factory=IngestStats)

    @property
    def reading_count(self) -> int:
        return sum(len(t.readings) for t in self.tracks.values())

    def mmsis(self) -> set[int]:
        return set(self.tracks.keys())


def _canonicalize(readings: list[PositionReading]) -> tuple[list[PositionReading], int]:
    """Sort into canonical order and collapse exact duplicate rows.

    A duplicate is an exact (timestamp, lat, lon) match within one MMSI;
    returns (kept, duplicates_removed).
    """
    readings.sort(key=_sort_key)
    kept: list[PositionReading] = []
    dupes = 0
    prev_key = None
    for r in readings:
        key = (r.timestamp, r.lat, r.lon)
        if key == prev_key:
            dupes += 1
            continue
        kept.append(r)
        prev_key = key
    return kept, dupes


def trackset_from_readings(
    readings: Iterable[PositionReading], provenance: str, stats: IngestStats | None = None
) -> TrackSet:
    """Group readings per MMSI into canonical tracks."""
    stats = stats or IngestStats()
    tracks: dict[int, Track] = {}
    for r in readings:
        track = tracks.get(r.mmsi)
        if track is None:
            track = tracks[r.mmsi] = Track(r.mmsi)
        track.readings.append(r)
    for track in tracks.values():
        track.readings, dupes = _canonicalize(track.readings)
        if dupes:
            stats.drop("duplicate", dupes)
    stats.readings_kept = sum(len(t.readings) for t in tracks.values())
    return TrackSet(tracks=tracks, provenance=provenance, stats=stats)


def _resolve_columns(
    header: list[str], columns: dict[str, str]
) -> dict[str, int | None]:
    index = {name: i for i, name in enumerate(header)}
    resolved: dict[str, int | None] = {}
    for fieldname, colname in columns.items():
        resolved[fieldname] = index.get(colname)
    missing = [
        columns[f] for f in REQUIRED_FIELDS if resolved.get(f) is None
    ]
    if missing:
        raise ConfigError(
            f"required columns {missing} not found; available headers: {header}"
        )
    return resolved


def ingest_csv(
    source: TextIO, columns: dict[str, str] | None = None, provenance: str = "csv"
) -> TrackSet:
    """Read a readings CSV into a TrackSet.

    Unparseable rows are counted and skipped; a missing required column is
    a configuration error. Rows whose lat or lon is blank are kept but
    flagged (no position) so totals stay auditable.
    """
    colmap = dict(DEFAULT_COLUMNS)
    if columns:
        colmap.update(columns)
    reader = csv.reader(source)
    try:
        header = next(reader)
    except StopIteration:
        raise ConfigError("empty input: no CSV header") from None
    idx = _resolve_columns(header, colmap)
    i_mmsi, i_ts = idx["mmsi"], idx["timestamp"]
    i_lat, i_lon, i_sog = idx["lat"], idx["lon"], idx["sog"]
    i_cog, i_mt = idx.get("cog"), idx.get("msg_type")

    stats = IngestStats()
    readings: list[PositionReading] = []
    for row in reader:
        stats.rows_in += 1
        try:
            mmsi = int(row[i_mmsi])
            ts_text = row[i_ts].strip()
            if not ts_text:
                stats.drop("missing_timestamp")
                continue
            ts = parse_timestamp(ts_text)
            lat_text, lon_text = row[i_lat].strip(), row[i_lon].strip()
            if lat_text and lon_text:
                lat, lon = float(lat_text), float(lon_text)
                if abs(lat) > 90.0 or abs(lon) > 180.0:
                    stats.drop("bad_coordinates")
                    continue
            else:
                lat = lon = None
            sog_text = row[i_sog].strip()
            sog = float(sog_text) if sog_text else None
            if sog is not None and sog < 0:
                stats.drop("bad_speed")
                continue
            cog = None
            if i_cog is not None and i_cog < len(row) and row[i_cog].strip():
                cog = float(row[i_cog])
            mt = 0
            if i_mt is not None and i_mt < len(row) and row[i_mt].strip():
                mt = int(row[i_mt])
        except (ValueError, IndexError):
            stats.drop("unparseable_row")
            continue
        readings.append(PositionReading(mmsi, ts, lat, lon, sog, cog, mt))
    return trackset_from_readings(readings, provenance, stats)


def merge(a: TrackSet, b: TrackSet) -> TrackSet:
    """Combine two TrackSets; canonical order makes this commutative up to
    provenance, and exact duplicates shared across inputs collapse."""
    stats = a.stats.merged_with(b.stats)
    tracks: dict[int, Track] = {}
    for source in (a, b):
        for mmsi, track in source.tracks.items():
            dest = tracks.get(mmsi)
            if dest is None:
                tracks[mmsi] = Track(mmsi, list(track.readings), track.vessel)
            else:
                dest.readings.extend(track.readings)
                if dest.vessel is None:
                    dest.vessel = track.vessel
    cross_dupes = 0
    for track in tracks.values():
        track.readings, dupes = _canonicalize(track.readings)
        cross_dupes += dupes
    if cross_dupes:
        stats.drop("duplicate", cross_dupes)
    stats.readings_kept = sum(len(t.readings) for t in tracks.values())
    provenance = f"merge({a.provenance}, {b.provenance})"
    return TrackSet(tracks=tracks, provenance=provenance, stats=stats)


def load_vessels_csv(source: TextIO) -> list[VesselRecord]:
    """Read static observations (one row per observation, not per ship)."""
    reader = csv.DictReader(source)
    if reader.fieldnames is None:
        return []
    needed = {"mmsi", "vessel_type_code"}
    if not needed.issubset(set(reader.fieldnames)):
        raise ConfigError(
            f"vessel CSV needs columns {sorted(needed)}; got {reader.fieldnames}"
        )
    records: list[VesselRecord] = []
    for row in reader:
        try:
            mmsi = int(row["mmsi"])
            type_code = int(row["vessel_type_code"])
        except (TypeError, ValueError):
            continue
        length = row.get("length_m") or None
        beam = row.get("beam_m") or None
        records.append(
            VesselRecord(
                mmsi=mmsi,
                vessel_type_code=type_code,
                name=row.get("name") or "",
                flag=row.get("flag") or f"{mmsi:09d}"[:3],
                length_m=int(length) if length else None,
                beam_m=int(beam) if beam else None,
            )
        )
    return records


def iter_readings(ts: TrackSet) -> Iterable[PositionReading]:
    """All readings in deterministic order: MMSI ascending, track order."""
    for mmsi in sorted(ts.tracks):
        yield from ts.tracks[mmsi].readings


def attach_vessels(ts: TrackSet, records: Iterable[VesselRecord]) -> int:
    """Attach the first static observation per MMSI to its track."""
    attached = 0
    for record in records:
        track = ts.tracks.get(record.mmsi)
        if track is not None and track.vessel is None:
            track.vessel = record
            attached += 1
    return attached
