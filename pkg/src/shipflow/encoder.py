"""Encoding of domain records back into AIS payloads and NMEA sentences.

The encoder is the decoder's inverse over the fields the domain records
carry. Fields outside the records (nav status, rate of turn, heading,
radio state, ...) are written as fixed not-available defaults, so
encode(decode(payload)) reproduces any payload this module produced.
"""

from __future__ import annotations

from .errors import UnsupportedTypeError
from .messages import (
    COG_NA_RAW,
    LAT_NA_RAW,
    LON_NA_RAW,
    SOG_NA_RAW,
    PositionReading,
    VesselRecord,
)
from .nmea import build_sentence
from .sixbit import BitBuffer, BitWriter, encode_sixbit

# defaults for fields the domain records do not model
_NAV_STATUS_NA = 15
_ROT_NA = -128
_HEADING_NA = 511
_SECONDS_NA = 60

# single-slot sentences carry at most 60 payload characters
MAX_PAYLOAD_CHARS = 60


def _coord_raw(value: float | None, na_raw: int) -> int:
    return na_raw if value is None else round(value * 600000)


def _sog_raw(sog: float | None) -> int:
    return SOG_NA_RAW if sog is None else round(sog * 10)


def _cog_raw(cog: float | None) -> int:
    return COG_NA_RAW if cog is None else round(cog * 10)


def encode_position_report(
    reading: PositionReading,
    name: str = "",
    vessel_type_code: int = 0,
    ts_seconds: int = _SECONDS_NA,
) -> BitBuffer:
    """Build the payload bits for a position report of reading.msg_type.

    Type 19 carries a static block (name, vessel type); callers that want
    those bits populated pass them explicitly, everything else defaults.
    """
    mt = reading.msg_type
    lat = None if reading.lat is None else reading.lat
    lon = None if reading.lon is None else reading.lon
    w = BitWriter()
    if mt in (1, 2, 3):
        w.uint(mt, 6).uint(0, 2).uint(reading.mmsi, 30)
        w.uint(_NAV_STATUS_NA, 4).sint(_ROT_NA, 8)
        w.uint(_sog_raw(reading.sog_knots), 10).uint(0, 1)
        w.sint(_coord_raw(lon, LON_NA_RAW), 28)
        w.sint(_coord_raw(lat, LAT_NA_RAW), 27)
        w.uint(_cog_raw(reading.cog_deg), 12)
        w.uint(_HEADING_NA, 9).uint(ts_seconds, 6)
        w.uint(0, 2).uint(0, 3).uint(0, 1).uint(0, 19)
        return w.finish()  # 168 bits
    if mt == 18:
        w.uint(18, 6).uint(0, 2).uint(reading.mmsi, 30).uint(0, 8)
        w.uint(_sog_raw(reading.sog_knots), 10).uint(0, 1)
        w.sint(_coord_raw(lon, LON_NA_RAW), 28)
        w.sint(_coord_raw(lat, LAT_NA_RAW), 27)
        w.uint(_cog_raw(reading.cog_deg), 12)
        w.uint(_HEADING_NA, 9).uint(ts_seconds, 6)
        w.uint(0, 2).uint(1, 1).uint(0, 5).uint(0, 1).uint(0, 1).uint(0, 20)
        return w.finish()  # 168 bits
    if mt == 19:
        w.uint(19, 6).uint(0, 2).uint(reading.mmsi, 30).uint(0, 8)
        w.uint(_sog_raw(reading.sog_knots), 10).uint(0, 1)
        w.sint(_coord_raw(lon, LON_NA_RAW), 28)
        w.sint(_coord_raw(lat, LAT_NA_RAW), 27)
        w.uint(_cog_raw(reading.cog_deg), 12)
        w.uint(_HEADING_NA, 9).uint(ts_seconds, 6).uint(0, 4)
        w.text(name, 20).uint(vessel_type_code, 8)
        w.uint(0, 9).uint(0, 9).uint(0, 6).uint(0, 6)  # dimensions
        w.uint(0, 4).uint(0, 1).uint(0, 1).uint(0, 1).uint(0, 4)
        return w.finish()  # 312 bits
    raise UnsupportedTypeError(mt)


def encode_static_report(record: VesselRecord) -> BitBuffer:
    """Build the 424-bit type 5 payload for a vessel record.

    Length splits into bow/stern at 511 m, beam into port/starboard at
    63 m, so records up to 1022 x 126 m survive a decode round trip.
    """
    length = record.length_m or 0
    beam = record.beam_m or 0
    if not 0 <= length <= 1022 or not 0 <= beam <= 126:
        raise ValueError(f"dimensions {length}x{beam} not encodable")
    bow = min(length, 511)
    port = min(beam, 63)
    w = BitWriter()
    w.uint(5, 6).uint(0, 2).uint(record.mmsi, 30)
    w.uint(0, 2).uint(0, 30)           # AIS version, IMO number
    w.text("", 7)                      # callsign
    w.text(record.name, 20)
    w.uint(record.vessel_type_code, 8)
    w.uint(bow, 9).uint(length - bow, 9).uint(port, 6).uint(beam - port, 6)
    w.uint(0, 4)                       # EPFD
    w.uint(0, 4).uint(0, 5).uint(0, 5).uint(0, 6)  # ETA
    w.uint(0, 8)                       # draught
    w.text("", 20)                     # destination
    w.uint(0, 1).uint(0, 1)            # DTE, spare
    return w.finish()  # 424 bits


def to_sentences(
    bits: BitBuffer,
    channel: str = "A",
    sequence_id: int | None = None,
    receiver_timestamp: float | None = None,
) -> list[str]:
    """Frame payload bits into one or more NMEA lines, fragmenting as needed.

    When a receiver timestamp is given, lines carry the epoch prefix the
    ingestion side expects.
    """
    payload, fill = encode_sixbit(bits)
    chunks = [
        payload[i : i + MAX_PAYLOAD_CHARS]
        for i in range(0, len(payload), MAX_PAYLOAD_CHARS)
    ] or [""]
    total = len(chunks)
    if total > 1 and sequence_id is None:
        sequence_id = 0
    lines = []
    for idx, chunk in enumerate(chunks, start=1):
        sentence = build_sentence(
            chunk,
            fill if idx == total else 0,
            fragment_count=total,
            fragment_index=idx,
            sequence_id=sequence_id if total > 1 else None,
            channel=channel,
        )
        if receiver_timestamp is not None:
            prefix = (
                f"{receiver_timestamp:.0f}"
                if float(receiver_timestamp).is_integer()
                else f"{receiver_timestamp:.3f}"
            )
            sentence = f"{prefix}\t{sentence}"
        lines.append(sentence)
    return lines
