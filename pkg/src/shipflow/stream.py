"""Line-stream decoding: NMEA text in, position readings and vessel
records out, with per-reason counters for everything that was skipped.

Unknown message types, checksum failures, and malformed lines are counted
and skipped; only I/O errors propagate. Feeds vary widely between
providers, so the decoder is deliberately hard to kill.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Iterable, Iterator, TextIO

from .errors import (
    DuplicateFragmentError,
    MultipartError,
    SentenceFormatError,
    SixbitAlphabetError,
    TruncatedMessageError,
    UnsupportedTypeError,
)
from .messages import PositionReading, VesselRecord, decode_message
from .multipart import MultipartAssembler
from .nmea import parse_line

READINGS_HEADER = ["mmsi", "timestamp", "lat", "lon", "sog_knots", "cog_deg", "msg_type"]
VESSELS_HEADER = ["mmsi", "vessel_type_code", "name", "flag", "length_m", "beam_m"]


@dataclass(slots=True)
class DecodeStats:
    lines_in: int = 0
    decoded_positions: int = 0
    decoded_static: int = 0
    checksum_failures: int = 0
    format_errors: int = 0
    bad_alphabet: int = 0
    unsupported_type: int = 0
    truncated: int = 0
    duplicate_fragments: int = 0
    incomplete_multipart: int = 0
    blank_lines: int = 0

    def as_items(self) -> list[tuple[str, int]]:
        return [
            ("lines_in", self.lines_in),
            ("decoded_positions", self.decoded_positions),
            ("decoded_static", self.decoded_static),
            ("checksum_failures", self.checksum_failures),
            ("format_errors", self.format_errors),
            ("bad_alphabet", self.bad_alphabet),
            ("unsupported_type", self.unsupported_type),
            ("truncated", self.truncated),
            ("duplicate_fragments", self.duplicate_fragments),
            ("incomplete_multipart", self.incomplete_multipart),
            ("blank_lines", self.blank_lines),
        ]


@dataclass(slots=True)
class DecodeResult:
    readings: list[PositionReading] = field(default_factory=list)
    vessels: list[VesselRecord] = field(default_factory=list)
    stats: DecodeStats = field(default_factory=DecodeStats)


def iter_decoded(
    lines: Iterable[str], stats: DecodeStats
) -> Iterator[PositionReading | VesselRecord]:
    """Decode a line stream lazily, updating stats as a side channel."""
    assembler = MultipartAssembler()
    for line in lines:
        stats.lines_in += 1
        stripped = line.strip()
        if not stripped:
            stats.blank_lines += 1
            continue
        try:
            sentence = parse_line(stripped)
        except SentenceFormatError as exc:
            if "checksum mismatch" in str(exc):
                stats.checksum_failures += 1
            else:
                stats.format_errors += 1
            continue
        try:
            assembled = assembler.feed(sentence)
        except DuplicateFragmentError:
            stats.duplicate_fragments += 1
            continue
        except SixbitAlphabetError:
            stats.bad_alphabet += 1
            continue
        if assembled is None:
            continue
        try:
            yield decode_message(assembled.bits, assembled.receiver_timestamp)
        except UnsupportedTypeError:
            stats.unsupported_type += 1
        except TruncatedMessageError:
            stats.truncated += 1
        except MultipartError:
            stats.incomplete_multipart += 1
    assembler.flush()  # abandons window-expired and end-of-stream stragglers
    stats.incomplete_multipart += assembler.expired_groups


def decode_lines(lines: Iterable[str]) -> DecodeResult:
    """Decode a full stream into lists of readings and vessel records."""
    result = DecodeResult()
    for message in iter_decoded(lines, result.stats):
        if isinstance(message, PositionReading):
            result.readings.append(message)
            result.stats.decoded_positions += 1
        else:
            result.vessels.append(message)
            result.stats.decoded_static += 1
    return result


def fmt_timestamp(ts: float | None) -> str:
    if ts is None:
        return ""
    return f"{ts:.0f}" if float(ts).is_integer() else f"{ts:.3f}"


def fmt_coord(value: float | None) -> str:
    return "" if value is None else f"{value:.6f}"


def fmt_tenths(value: float | None) -> str:
    return "" if value is None else f"{value:.1f}"


def write_readings_csv(out: TextIO, readings: Iterable[PositionReading]) -> int:
    """Write the decoded-readings CSV; returns the row count."""
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(READINGS_HEADER)
    n = 0
    for r in readings:
        writer.writerow(
            [
                r.mmsi,
                fmt_timestamp(r.timestamp),
                fmt_coord(r.lat),
                fmt_coord(r.lon),
                fmt_tenths(r.sog_knots),
                fmt_tenths(r.cog_deg),
                r.msg_type,
            ]
        )
        n += 1
    return n


def write_vessels_csv(out: TextIO, vessels: Iterable[VesselRecord]) -> int:
    """Write one row per decoded static observation (not deduplicated:
    repeated observations are exactly what the conflict filter needs)."""
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(VESSELS_HEADER)
    n = 0
    for v in vessels:
        writer.writerow(
            [
                v.mmsi,
                v.vessel_type_code,
                v.name,
                v.flag,
                "" if v.length_m is None else v.length_m,
                "" if v.beam_m is None else v.beam_m,
            ]
        )
        n += 1
    return n
