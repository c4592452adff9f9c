"""Decoding of AIS position reports (types 1, 2, 3, 18, 19) and static
vessel reports (type 5) into domain records.

Field offsets follow the ITU-R M.1371 tables. Coordinates travel as signed
integers in 1/10000 arc-minute; speed as tenths of knots; course as tenths
of degrees. Each field has a reserved not-available sentinel which decodes
to None rather than a bogus number.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import TruncatedMessageError, UnsupportedTypeError
from .sixbit import BitBuffer

POSITION_TYPES = frozenset((1, 2, 3, 18, 19))
STATIC_TYPES = frozenset((5,))
SUPPORTED_TYPES = POSITION_TYPES | STATIC_TYPES

# not-available sentinels (raw field values)
LON_NA_RAW = 181 * 600000  # 108600000
LAT_NA_RAW = 91 * 600000   # 54600000 == 0x3412140
SOG_NA_RAW = 1023
COG_NA_RAW = 3600

MIN_BITS = {1: 168, 2: 168, 3: 168, 18: 168, 19: 312, 5: 240}
FULL_BITS_TYPE5 = 424


class PositionReading(NamedTuple):
    """One timestamped vessel position; the atom of all downstream analysis."""

    mmsi: int
    timestamp: float | None
    lat: float | None
    lon: float | None
    sog_knots: float | None
    cog_deg: float | None
    msg_type: int = 0

    @property
    def has_position(self) -> bool:
        return self.lat is not None


class VesselRecord(NamedTuple):
    """Static identity decoded from a type 5 report."""

    mmsi: int
    vessel_type_code: int
    name: str
    flag: str
    length_m: int | None = None
    beam_m: int | None = None
    partial: bool = False

    @property
    def category(self) -> str:
        return ship_category(self.vessel_type_code)


_TYPE_3X = {
    30: "fishing", 31: "towing", 32: "towing", 33: "dredging",
    34: "diving", 35: "military", 36: "sailing", 37: "pleasure-craft",
}
_TYPE_5X = {
    50: "pilot", 51: "search-and-rescue", 52: "tug", 53: "port-tender",
    54: "anti-pollution", 55: "law-enforcement", 58: "medical",
    59: "noncombatant",
}
_TYPE_TENS = {
    2: "wing-in-ground", 4: "high-speed-craft", 6: "passenger",
    7: "cargo", 8: "tanker", 9: "other",
}


def ship_category(code: int) -> str:
    """Coarse category for an ITU type-of-ship code (0..99)."""
    if code == 0:
        return "not-available"
    if code in _TYPE_3X:
        return _TYPE_3X[code]
    if code in _TYPE_5X:
        return _TYPE_5X[code]
    cat = _TYPE_TENS.get(code // 10)
    return cat if cat is not None else "reserved"


def mmsi_flag(mmsi: int) -> str:
    """Three-digit country prefix (MID) of a 9-digit MMSI."""
    return f"{mmsi:09d}"[:3]


def _coord(raw: int, na_raw: int, limit: float) -> float | None:
    if raw == na_raw:
        return None
    deg = raw / 600000.0
    if abs(deg) > limit:
        return None  # out-of-range garbage, same bucket as not-available
    return deg


def decode_position_report(
    bits: BitBuffer, receiver_timestamp: float | None = None
) -> PositionReading:
    """Extract a PositionReading from a de-armored position payload."""
    if len(bits) < 6:
        raise TruncatedMessageError("payload shorter than the 6-bit type field")
    msg_type = bits.uint(0, 6)
    if msg_type not in POSITION_TYPES:
        raise UnsupportedTypeError(msg_type)
    if len(bits) < MIN_BITS[msg_type]:
        raise TruncatedMessageError(
            f"type {msg_type} needs {MIN_BITS[msg_type]} bits, got {len(bits)}"
        )
    mmsi = bits.uint(8, 30)
    if msg_type in (1, 2, 3):
        sog_raw = bits.uint(50, 10)
        lon_raw = bits.sint(61, 28)
        lat_raw = bits.sint(89, 27)
        cog_raw = bits.uint(116, 12)
    else:  # 18 and 19 share the class-B kinematics block
        sog_raw = bits.uint(46, 10)
        lon_raw = bits.sint(57, 28)
        lat_raw = bits.sint(85, 27)
        cog_raw = bits.uint(112, 12)
    lon = _coord(lon_raw, LON_NA_RAW, 180.0)
    lat = _coord(lat_raw, LAT_NA_RAW, 90.0)
    if lat is None or lon is None:
        lat = lon = None  # never emit a half-available position
    sog = None if sog_raw == SOG_NA_RAW else sog_raw / 10.0
    cog = None if cog_raw >= COG_NA_RAW else cog_raw / 10.0
    return PositionReading(
        mmsi=mmsi,
        timestamp=receiver_timestamp,
        lat=lat,
        lon=lon,
        sog_knots=sog,
        cog_deg=cog,
        msg_type=msg_type,
    )


def _dim(total: int) -> int | None:
    return total if total > 0 else None


def decode_static_report(bits: BitBuffer) -> VesselRecord:
    """Extract a VesselRecord from a type 5 static/voyage payload."""
    if len(bits) < 6:
        raise TruncatedMessageError("payload shorter than the 6-bit type field")
    msg_type = bits.uint(0, 6)
    if msg_type != 5:
        raise UnsupportedTypeError(msg_type)
    if len(bits) < MIN_BITS[5]:
        raise TruncatedMessageError(
            f"type 5 needs {MIN_BITS[5]} bits through the vessel-type field, got {len(bits)}"
        )
    mmsi = bits.uint(8, 30)
    name = bits.text(112, 120).rstrip("@ ")
    vessel_type = bits.uint(232, 8)
    partial = len(bits) < FULL_BITS_TYPE5
    length_m = beam_m = None
    if len(bits) >= 270:
        length_m = _dim(bits.uint(240, 9) + bits.uint(249, 9))
        beam_m = _dim(bits.uint(258, 6) + bits.uint(264, 6))
    return VesselRecord(
        mmsi=mmsi,
        vessel_type_code=vessel_type,
        name=name,
        flag=mmsi_flag(mmsi),
        length_m=length_m,
        beam_m=beam_m,
        partial=partial,
    )


def decode_message(
    bits: BitBuffer, receiver_timestamp: float | None = None
) -> PositionReading | VesselRecord:
    """Dispatch a de-armored payload to the right decoder."""
    if len(bits) < 6:
        raise TruncatedMessageError("payload shorter than the 6-bit type field")
    msg_type = bits.uint(0, 6)
    if msg_type in POSITION_TYPES:
        return decode_position_report(bits, receiver_timestamp)
    if msg_type in STATIC_TYPES:
        return decode_static_report(bits)
    raise UnsupportedTypeError(msg_type)
