"""World Port Index loading and capped nearest-port queries.

The published WPI CSV schema drifts between releases, so column names are
configuration with defaults matching the current export. Queries run
against a latitude-sorted table: candidates are visited outward from the
query latitude and the sweep stops once the remaining latitude offset
alone exceeds the best distance so far -- the result is identical to a
full linear scan, just cheaper.
"""

from __future__ import annotations

import csv
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, TextIO

from .errors import ConfigError
from .geo import KM_PER_DEG, GeoPoint, _haversine

DEFAULT_WPI_COLUMNS = {
    "id": "World Port Index Number",
    "name": "Main Port Name",
    "country": "Country Code",
    "lat": "Latitude",
    "lon": "Longitude",
}
DEFAULT_SNAP_KM = 50.0


class PortRecord(NamedTuple):
    port_id: str
    name: str
    country: str
    location: GeoPoint


class NearestPort(NamedTuple):
    port: PortRecord
    distance_km: float


@dataclass(slots=True)
class PortIndex:
    ports: list[PortRecord]
    rows_skipped: int = 0
    _by_id: dict[str, PortRecord] = field(default_factory=dict, repr=False)
    _sorted: list[tuple[float, float, str, PortRecord]] = field(
        default_factory=list, repr=False
    )
    _lats: list[float] = field(default_factory=list, repr=False)

    def __post_init__(self) -> None:
        self._by_id = {p.port_id: p for p in self.ports}
        self._sorted = sorted(
            ((p.location.lat, p.location.lon, p.port_id, p) for p in self.ports),
        )
        self._lats = [entry[0] for entry in self._sorted]

    def __len__(self) -> int:
        return len(self.ports)

    def get(self, port_id: str) -> PortRecord | None:
        return self._by_id.get(port_id)

    def names(self) -> dict[str, str]:
        return {p.port_id: p.name for p in self.ports}


def load_wpi(
    source: TextIO, columns: dict[str, str] | None = None
) -> PortIndex:
    """Load a WPI-style CSV; rows with invalid coordinates are counted and
    skipped, a missing coordinate column is a configuration error."""
    colmap = dict(DEFAULT_WPI_COLUMNS)
    if columns:
        colmap.update(columns)
    reader = csv.DictReader(source)
    header = reader.fieldnames or []
    missing = [colmap[k] for k in ("id", "lat", "lon") if colmap[k] not in header]
    if missing:
        raise ConfigError(
            f"port CSV is missing columns {missing}; available headers: {header}"
        )
    ports: list[PortRecord] = []
    skipped = 0
    seen_ids: set[str] = set()
    for row in reader:
        try:
            lat = float(row[colmap["lat"]])
            lon = float(row[colmap["lon"]])
        except (TypeError, ValueError):
            skipped += 1
            continue
        if abs(lat) > 90.0 or abs(lon) > 180.0:
            skipped += 1
            continue
        port_id = (row.get(colmap["id"]) or "").strip()
        if not port_id or port_id in seen_ids:
            skipped += 1
            continue
        seen_ids.add(port_id)
        ports.append(
            PortRecord(
                port_id=port_id,
                name=(row.get(colmap["name"]) or "").strip(),
                country=(row.get(colmap["country"]) or "").strip(),
                location=GeoPoint(lat, lon),
            )
        )
    return PortIndex(ports=ports, rows_skipped=skipped)


def nearest_port(
    p: GeoPoint, idx: PortIndex, max_km: float = DEFAULT_SNAP_KM
) -> NearestPort | None:
    """The closest port within max_km, or None.

    Exact ties on distance break toward the lexicographically smallest
    port_id, so results are reproducible across index layouts.
    """
    return _nearest(p.lat, p.lon, idx, max_km)


def _nearest(
    lat: float, lon: float, idx: PortIndex, max_km: float
) -> NearestPort | None:
    entries = idx._sorted
    if not entries:
        return None
    lats = idx._lats
    best_dist = max_km
    best_id: str | None = None
    best_port: PortRecord | None = None
    # sweep outward from the query latitude; a candidate whose latitude
    # offset alone exceeds the current best cannot win (distance >= that)
    pos = bisect_left(lats, lat)
    lo = pos - 1
    hi = pos
    n = len(entries)
    margin = 1.0 + 1e-12
    while lo >= 0 or hi < n:
        lo_gap = (lat - lats[lo]) * KM_PER_DEG if lo >= 0 else None
        hi_gap = (lats[hi] - lat) * KM_PER_DEG if hi < n else None
        if lo_gap is not None and (hi_gap is None or lo_gap <= hi_gap):
            if lo_gap > best_dist * margin:
                lo = -1
                continue
            entry = entries[lo]
            lo -= 1
        else:
            if hi_gap is not None and hi_gap > best_dist * margin:
                hi = n
                continue
            entry = entries[hi]
            hi += 1
        d = _haversine(lat, lon, entry[0], entry[1])
        if d < best_dist or (
            d == best_dist and (best_id is None or entry[2] < best_id)
        ):
            best_dist = d
            best_id = entry[2]
            best_port = entry[3]
    if best_port is None:
        return None
    return NearestPort(best_port, best_dist)


def index_from_records(ports: Iterable[PortRecord]) -> PortIndex:
    return PortIndex(ports=list(ports))
