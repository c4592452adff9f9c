"""shipflow: AIS vessel-tracking toolkit.

Decodes AIVDM traffic into position readings and vessel records, cleans
per-ship trajectories, selects ships by point-radius geofence and speed
cap inside a time window, snaps low-speed readings to their nearest
ports, and aggregates the resulting port calls into directed
origin-destination matrices.
"""

from .cleaning import FilterConfig, FilterReport, clean
from .geo import Geofence, GeoPoint, SelectionQuery, extract_window, haversine_km, select_mmsis
from .messages import PositionReading, VesselRecord
from .odmatrix import OdMatrix, build_od, matrix_stats, snap_track, transitions
from .ports import PortIndex, PortRecord, load_wpi, nearest_port
from .tracks import Track, TrackSet, ingest_csv, merge

__version__ = "0.1.0"

__all__ = [
    "FilterConfig",
    "FilterReport",
    "Geofence",
    "GeoPoint",
    "OdMatrix",
    "PortIndex",
    "PortRecord",
    "PositionReading",
    "SelectionQuery",
    "Track",
    "TrackSet",
    "VesselRecord",
    "build_od",
    "clean",
    "extract_window",
    "haversine_km",
    "ingest_csv",
    "load_wpi",
    "matrix_stats",
    "merge",
    "nearest_port",
    "select_mmsis",
    "snap_track",
    "transitions",
    "__version__",
]
