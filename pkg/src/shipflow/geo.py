"""Great-circle distance, point-radius geofences, and the two-stage
low-speed selection query.

Stage one finds the ships: every MMSI with at least one reading inside
the fence, below the speed cap, inside the time window. Stage two pulls
ALL qualifying low-speed readings of those ships in the window -- with no
radius clause, so later port association can reach anywhere the ships
went.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import ConfigError
from .tracks import Track, TrackSet

EARTH_RADIUS_KM = 6371.0
KM_PER_DEG = EARTH_RADIUS_KM * math.pi / 180.0  # 111.19492664455873


class GeoPoint(NamedTuple):
    lat: float
    lon: float


def haversine_km(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance on a 6371 km sphere."""
    return _haversine(a.lat, a.lon, b.lat, b.lon)


def _haversine(lat1: float, lon1: float, lat2: float, lon2: float) -> float:
    phi1 = math.radians(lat1)
    phi2 = math.radians(lat2)
    dphi = math.radians(lat2 - lat1)
    dlam = math.radians(lon2 - lon1)
    a = (
        math.sin(dphi / 2.0) ** 2
        + math.cos(phi1) * math.cos(phi2) * math.sin(dlam / 2.0) ** 2
    )
    return 2.0 * EARTH_RADIUS_KM * math.asin(min(1.0, math.sqrt(a)))


@dataclass(slots=True, frozen=True)
class Geofence:
    center: GeoPoint
    radius_km: float

    def __post_init__(self) -> None:
        if self.radius_km <= 0:
            raise ConfigError("geofence radius must be positive")
        if abs(self.center.lat) > 90 or abs(self.center.lon) > 180:
            raise ConfigError(f"geofence center {self.center} out of range")

    def bounding_box(self) -> "_BBox":
        return _BBox.around(self.center, self.radius_km)

    def contains(self, lat: float, lon: float) -> bool:
        return _haversine(lat, lon, self.center.lat, self.center.lon) <= self.radius_km


class _BBox(NamedTuple):
    """Conservative lat/lon prebounds that circumscribe a spherical cap.

    Purely a fast-reject helper: a point outside the box is certainly
    outside the circle; points inside still get the exact haversine test.
    """

    center_lat: float
    center_lon: float
    dlat: float
    dlon: float  # 360 means "all longitudes" (cap touches a pole)

    @classmethod
    def around(cls, center: GeoPoint, radius_km: float) -> "_BBox":
        c = radius_km / EARTH_RADIUS_KM  # angular radius
        dlat = math.degrees(c) * (1.0 + 1e-12) + 1e-12
        if abs(center.lat) + dlat >= 90.0:
            dlon = 360.0
        else:
            # widest longitude offset of a cap: asin(sin c / cos lat)
            ratio = math.sin(c) / math.cos(math.radians(center.lat))
            dlon = math.degrees(math.asin(min(1.0, ratio))) * (1.0 + 1e-12) + 1e-12
        return cls(center.lat, center.lon, dlat, dlon)

    def may_contain(self, lat: float, lon: float) -> bool:
        if abs(lat - self.center_lat) > self.dlat:
            return False
        if self.dlon >= 360.0:
            return True
        d = abs(lon - self.center_lon) % 360.0
        if d > 180.0:
            d = 360.0 - d
        return d <= self.dlon


@dataclass(slots=True, frozen=True)
class SelectionQuery:
    fence: Geofence
    max_speed_knots: float = 2.0
    window: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self) -> None:
        if self.max_speed_knots < 0:
            raise ConfigError("max speed must be non-negative")
        if not self.window[0] < self.window[1]:
            raise ConfigError(
                f"window start {self.window[0]} must precede end {self.window[1]}"
            )


def _track_qualifies(track: Track, q: SelectionQuery, box: _BBox) -> bool:
    t0, t1 = q.window
    clat, clon = q.fence.center
    radius = q.fence.radius_km
    vmax = q.max_speed_knots
    for r in track.readings:
        ts = r.timestamp
        if ts is None or ts < t0 or ts > t1:
            continue
        sog = r.sog_knots
        if sog is None or sog >= vmax:
            continue
        lat = r.lat
        if lat is None:
            continue
        if not box.may_contain(lat, r.lon):
            continue
        if _haversine(lat, r.lon, clat, clon) <= radius:
            return True
    return False


def select_mmsis(ts: TrackSet, q: SelectionQuery) -> set[int]:
    """MMSIs with a low-speed reading inside the fence during the window.

    'Inside' is inclusive (<= radius); the speed cap is strict (<).
    Readings with unavailable position or speed never qualify.
    """
    box = q.fence.bounding_box()
    return {
        mmsi for mmsi, track in ts.tracks.items() if _track_qualifies(track, q, box)
    }


def extract_window(ts: TrackSet, mmsis: Iterable[int], q: SelectionQuery) -> TrackSet:
    """All low-speed, in-window readings of the listed ships, unrestricted
    by the fence: the second stage keeps qualifying points anywhere."""
    t0, t1 = q.window
    vmax = q.max_speed_knots
    wanted = set(mmsis) & ts.mmsis()
    tracks: dict[int, Track] = {}
    for mmsi in sorted(wanted):
        track = ts.tracks[mmsi]
        kept = [
            r
            for r in track.readings
            if r.timestamp is not None
            and t0 <= r.timestamp <= t1
            and r.sog_knots is not None
            and r.sog_knots < vmax
            and r.lat is not None
        ]
        if kept:
            tracks[mmsi] = Track(mmsi, kept, track.vessel)
    return TrackSet(
        tracks=tracks,
        provenance=f"extract({ts.provenance})",
        stats=ts.stats,
    )
