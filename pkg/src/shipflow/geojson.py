"""Historical track reconstruction as GeoJSON (RFC 7946) or CSV.

Tracks are emitted as LineString features, split into separate segments
where the signal went quiet for longer than a configurable gap or where
the path crosses the antimeridian (so no feature ever spans the +/-180
discontinuity). A one-reading segment degrades to a Point. GeoJSON
coordinate order is [longitude, latitude]; internal types stay (lat, lon)
and the flip happens only here.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from typing import Iterable, TextIO

from .messages import PositionReading
from .stream import fmt_coord, fmt_tenths, fmt_timestamp
from .tracks import TrackSet

DEFAULT_GAP_HOURS = 6.0


@dataclass(slots=True)
class TrackGeometry:
    mmsi: int
    segments: list[list[PositionReading]] = field(default_factory=list)
    vessel_name: str | None = None
    vessel_type_code: int | None = None


def split_segments(
    readings: list[PositionReading], gap_split_hours: float
) -> list[list[PositionReading]]:
    """Contiguous runs, broken at long silences and antimeridian crossings."""
    gap_seconds = gap_split_hours * 3600.0
    segments: list[list[PositionReading]] = []
    current: list[PositionReading] = []
    prev: PositionReading | None = None
    for r in readings:
        if r.lat is None:
            continue
        if prev is not None and current:
            time_gap = (
                r.timestamp is not None
                and prev.timestamp is not None
                and r.timestamp - prev.timestamp > gap_seconds
            )
            crosses = abs(r.lon - prev.lon) > 180.0
            if time_gap or crosses:
                segments.append(current)
                current = []
        current.append(r)
        prev = r
    if current:
        segments.append(current)
    return segments


def build_geometries(
    ts: TrackSet, mmsis: Iterable[int], gap_split_hours: float = DEFAULT_GAP_HOURS
) -> list[TrackGeometry]:
    wanted = sorted(set(mmsis))
    unknown = [m for m in wanted if m not in ts.tracks]
    if unknown:
        known = ", ".join(str(m) for m in sorted(ts.tracks)) or "(none)"
        raise ValueError(f"unknown MMSI(s) {unknown}; known MMSIs: {known}")
    geometries = []
    for mmsi in wanted:
        track = ts.tracks[mmsi]
        geom = TrackGeometry(
            mmsi=mmsi,
            segments=split_segments(track.readings, gap_split_hours),
            vessel_name=track.vessel.name if track.vessel else None,
            vessel_type_code=track.vessel.vessel_type_code if track.vessel else None,
        )
        geometries.append(geom)
    return geometries


def _feature(geom: TrackGeometry, seg_index: int, segment: list[PositionReading]) -> dict:
    coords = [[r.lon, r.lat] for r in segment]
    timestamps = [r.timestamp for r in segment if r.timestamp is not None]
    properties: dict[str, object] = {
        "mmsi": geom.mmsi,
        "segment": seg_index,
        "readings": len(segment),
    }
    if timestamps:
        properties["start_time"] = timestamps[0]
        properties["end_time"] = timestamps[-1]
    if geom.vessel_name is not None:
        properties["vessel_name"] = geom.vessel_name
    if geom.vessel_type_code is not None:
        properties["vessel_type_code"] = geom.vessel_type_code
    if len(coords) == 1:
        geometry: dict[str, object] = {"type": "Point", "coordinates": coords[0]}
    else:
        geometry = {"type": "LineString", "coordinates": coords}
    return {"type": "Feature", "geometry": geometry, "properties": properties}


def export_geojson(
    ts: TrackSet, mmsis: Iterable[int], gap_split_hours: float = DEFAULT_GAP_HOURS
) -> dict:
    """FeatureCollection of per-segment features for the listed ships."""
    features = []
    for geom in build_geometries(ts, mmsis, gap_split_hours):
        for i, segment in enumerate(geom.segments):
            features.append(_feature(geom, i, segment))
    return {"type": "FeatureCollection", "features": features}


def write_geojson(
    out: TextIO,
    ts: TrackSet,
    mmsis: Iterable[int],
    gap_split_hours: float = DEFAULT_GAP_HOURS,
) -> int:
    doc = export_geojson(ts, mmsis, gap_split_hours)
    json.dump(doc, out, indent=2, sort_keys=True)
    out.write("\n")
    return len(doc["features"])


def write_tracks_csv(out: TextIO, ts: TrackSet, mmsis: Iterable[int]) -> int:
    """One row per position reading, in track order."""
    wanted = sorted(set(mmsis))
    unknown = [m for m in wanted if m not in ts.tracks]
    if unknown:
        known = ", ".join(str(m) for m in sorted(ts.tracks)) or "(none)"
        raise ValueError(f"unknown MMSI(s) {unknown}; known MMSIs: {known}")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["mmsi", "timestamp", "lat", "lon", "sog_knots", "cog_deg"])
    n = 0
    for mmsi in wanted:
        for r in ts.tracks[mmsi].readings:
            if r.lat is None:
                continue
            writer.writerow(
                [
                    mmsi,
                    fmt_timestamp(r.timestamp),
                    fmt_coord(r.lat),
                    fmt_coord(r.lon),
                    fmt_tenths(r.sog_knots),
                    fmt_tenths(r.cog_deg),
                ]
            )
            n += 1
    return n
