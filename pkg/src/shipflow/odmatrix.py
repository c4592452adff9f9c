"""Port-call sequences and origin-destination aggregation.

Each low-speed reading snaps to its nearest port within a distance cap
(readings near no port are discarded); runs of the same port collapse
into one visit. Consecutive visit pairs become directed trips, and trips
aggregate into a matrix keyed (origin, destination) carrying both the
trip count and the number of distinct ships, which are different
statements; exports carry both.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, TextIO

from .ports import PortIndex, _nearest
from .tracks import Track, TrackSet


class PortVisit(NamedTuple):
    port_id: str
    first_seen: float
    last_seen: float


@dataclass(slots=True)
class PortVisitSequence:
    mmsi: int
    visits: list[PortVisit] = field(default_factory=list)


def snap_track(
    track: Track,
    idx: PortIndex,
    max_km: float = 50.0,
    max_dwell_gap_hours: float | None = None,
) -> PortVisitSequence:
    """Associate a track's readings with ports and collapse runs into visits.

    With max_dwell_gap_hours set, a silence longer than the gap splits a
    run into two visits at the same port (two separate calls); by default
    a run is one visit no matter how long, which keeps consecutive visits
    distinct.
    """
    visits: list[PortVisit] = []
    gap_seconds = None if max_dwell_gap_hours is None else max_dwell_gap_hours * 3600.0
    current_id: str | None = None
    first = last = 0.0
    for r in track.readings:
        if r.lat is None:
            continue
        found = _nearest(r.lat, r.lon, idx, max_km)
        if found is None:
            continue
        port_id = found.port.port_id
        ts = r.timestamp if r.timestamp is not None else 0.0
        if current_id == port_id and (
            gap_seconds is None or ts - last <= gap_seconds
        ):
            last = ts
            continue
        if current_id is not None:
            visits.append(PortVisit(current_id, first, last))
        current_id = port_id
        first = last = ts
    if current_id is not None:
        visits.append(PortVisit(current_id, first, last))
    return PortVisitSequence(track.mmsi, visits)


def transitions(seq: PortVisitSequence) -> list[tuple[str, str]]:
    """Consecutive visit pairs of a collapsed sequence.

    Rejects sequences holding adjacent same-port visits: those only come
    from dwell-gap splitting, which the caller must fold away first.
    """
    pairs: list[tuple[str, str]] = []
    for a, b in zip(seq.visits, seq.visits[1:]):
        if a.port_id == b.port_id:
            raise ValueError(
                f"sequence for {seq.mmsi} is not collapsed: "
                f"adjacent visits at {a.port_id}"
            )
        pairs.append((a.port_id, b.port_id))
    return pairs


@dataclass(slots=True)
class OdEdge:
    trip_count: int = 0
    ships: set[int] = field(default_factory=set)

    @property
    def unique_ships(self) -> int:
        return len(self.ships)


@dataclass(slots=True)
class OdMatrix:
    edges: dict[tuple[str, str], OdEdge] = field(default_factory=dict)
    port_names: dict[str, str] = field(default_factory=dict)

    def sorted_edges(self) -> list[tuple[tuple[str, str], OdEdge]]:
        return sorted(self.edges.items(), key=lambda kv: kv[0])

    @property
    def total_trips(self) -> int:
        return sum(e.trip_count for e in self.edges.values())

    def ports_touched(self) -> set[str]:
        touched: set[str] = set()
        for origin, dest in self.edges:
            touched.add(origin)
            touched.add(dest)
        return touched

    def ships(self) -> set[int]:
        out: set[int] = set()
        for edge in self.edges.values():
            out |= edge.ships
        return out


def build_od(
    tracks: TrackSet,
    idx: PortIndex,
    max_km: float = 50.0,
    max_dwell_gap_hours: float | None = None,
    threads: int = 1,
) -> OdMatrix:
    """Snap every track, tabulate its transitions, and aggregate.

    Self-pairs (possible only when dwell-gap splitting is on) are dropped,
    matching the no-self-loop contract of the matrix.
    """
    from .parallel import ordered_map

    matrix = OdMatrix(port_names=idx.names())
    ordered_tracks = [tracks.tracks[m] for m in sorted(tracks.tracks)]

    def snap(track: Track) -> PortVisitSequence:
        return snap_track(track, idx, max_km, max_dwell_gap_hours)

    for seq in ordered_map(snap, ordered_tracks, threads):
        for a, b in zip(seq.visits, seq.visits[1:]):
            if a.port_id == b.port_id:
                continue
            edge = matrix.edges.get((a.port_id, b.port_id))
            if edge is None:
                edge = matrix.edges[(a.port_id, b.port_id)] = OdEdge()
            edge.trip_count += 1
            edge.ships.add(seq.mmsi)
    return matrix


class MatrixStats(NamedTuple):
    port_count: int
    ship_count: int
    edge_count: int
    trip_total: int
    top_edges: list[tuple[str, str, int]]


def matrix_stats(m: OdMatrix, top_k: int = 10) -> MatrixStats:
    """Summary counts of the kind headline analyses quote."""
    ranked = sorted(
        ((origin, dest, e.trip_count) for (origin, dest), e in m.edges.items()),
        key=lambda t: (-t[2], t[0], t[1]),
    )
    return MatrixStats(
        port_count=len(m.ports_touched()),
        ship_count=len(m.ships()),
        edge_count=len(m.edges),
        trip_total=m.total_trips,
        top_edges=ranked[:top_k],
    )


def stats_text(stats: MatrixStats) -> str:
    lines = [
        f"ports={stats.port_count}",
        f"ships={stats.ship_count}",
        f"edges={stats.edge_count}",
        f"trips={stats.trip_total}",
    ]
    for origin, dest, trips in stats.top_edges:
        lines.append(f"top_edge={origin}->{dest}:{trips}")
    return "\n".join(lines) + "\n"


OD_CSV_HEADER = [
    "origin_port_id",
    "origin_name",
    "dest_port_id",
    "dest_name",
    "trip_count",
    "unique_ships",
]


def write_od_csv(out: TextIO, matrix: OdMatrix) -> int:
    """Edge list sorted by origin then destination; deterministic bytes."""
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(OD_CSV_HEADER)
    n = 0
    names = matrix.port_names
    for (origin, dest), edge in matrix.sorted_edges():
        writer.writerow(
            [
                origin,
                names.get(origin, ""),
                dest,
                names.get(dest, ""),
                edge.trip_count,
                edge.unique_ships,
            ]
        )
        n += 1
    return n


def write_od_grid(out: TextIO, matrix: OdMatrix, value: str = "trips") -> int:
    """Dense labeled grid (origins as rows, destinations as columns)."""
    ids = sorted(matrix.ports_touched())
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["origin\\destination"] + ids)
    for origin in ids:
        row: list[object] = [origin]
        for dest in ids:
            edge = matrix.edges.get((origin, dest))
            if edge is None:
                row.append(0)
            elif value == "ships":
                row.append(edge.unique_ships)
            else:
                row.append(edge.trip_count)
        writer.writerow(row)
    return len(ids)


def write_port_calls_csv(out: TextIO, sequences: Iterable[PortVisitSequence]) -> int:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["mmsi", "port_id", "first_seen", "last_seen"])
    n = 0
    for seq in sequences:
        for visit in seq.visits:
            writer.writerow(
                [seq.mmsi, visit.port_id, f"{visit.first_seen:.0f}", f"{visit.last_seen:.0f}"]
            )
            n += 1
    return n
