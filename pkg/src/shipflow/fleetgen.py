"""Deterministic synthetic fleet generator.

Ships start dwelling at a hub port, then sail between fixture ports at
cruise speed, dwelling below 2 knots at each stop. Everything downstream
of the seed is reproducible byte for byte, and the scripted routes are
written alongside the traffic as machine-checkable ground truth. Known
anomalies (too-short MMSI, conflicting vessel types, a teleport jump) can
be injected on purpose, one ship each, recorded in a manifest.

Positions interpolate linearly in lat/lon, which is plenty for synthetic
traffic but assumes the port fixture does not straddle the antimeridian.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from typing import TextIO

from .encoder import encode_position_report, encode_static_report, to_sentences
from .errors import ConfigError
from .geo import _haversine
from .messages import PositionReading, VesselRecord, mmsi_flag
from .ports import PortIndex
from .stream import write_readings_csv, write_vessels_csv

KM_PER_KNOT_HOUR = 1.852

ANOMALY_BAD_MMSI = "bad-mmsi"
ANOMALY_TYPE_CONFLICT = "type-conflict"
ANOMALY_TELEPORT = "teleport"
KNOWN_ANOMALIES = (ANOMALY_BAD_MMSI, ANOMALY_TYPE_CONFLICT, ANOMALY_TELEPORT)

_TYPE_CODES = (60, 69, 70, 71, 74, 80, 82, 52, 30)


@dataclass(slots=True)
class ShipPlan:
    mmsi: int
    name: str
    type_code: int
    route: list[str]
    msg_type: int  # 1 or 18
    channel: str
    anomaly: str | None = None
    conflict_type_code: int | None = None


@dataclass(slots=True)
class FleetOutput:
    nmea_lines: list[str] = field(default_factory=list)
    readings: list[PositionReading] = field(default_factory=list)
    vessels: list[VesselRecord] = field(default_factory=list)
    plans: list[ShipPlan] = field(default_factory=list)
    time_span: tuple[float, float] = (0.0, 0.0)

    def transitions(self) -> list[tuple[int, str, str]]:
        out = []
        for plan in self.plans:
            for a, b in zip(plan.route, plan.route[1:]):
                out.append((plan.mmsi, a, b))
        return out

    def manifest(self) -> dict:
        return {
            "ships": [
                {
                    "mmsi": p.mmsi,
                    "name": p.name,
                    "type_code": p.type_code,
                    "route": p.route,
                    "anomaly": p.anomaly,
                }
                for p in self.plans
            ],
            "anomalies": [
                {"mmsi": p.mmsi, "kind": p.anomaly}
                for p in self.plans
                if p.anomaly is not None
            ],
        }


def _plan_ships(
    rng: random.Random,
    ports: PortIndex,
    n_ships: int,
    hub_id: str,
    anomalies: list[str],
) -> list[ShipPlan]:
    other_ids = sorted(p.port_id for p in ports.ports if p.port_id != hub_id)
    if not other_ids:
        raise ConfigError("port fixture needs at least two ports")
    plans = []
    used_mmsis: set[int] = set()
    anomaly_by_ship = {i: kind for i, kind in enumerate(anomalies)}
    for i in range(n_ships):
        anomaly = anomaly_by_ship.get(i)
        while True:
            if anomaly == ANOMALY_BAD_MMSI:
                mmsi = rng.randint(10_000_000, 99_999_999)  # 8 digits: invalid
            else:
                mmsi = rng.randint(200_000_000, 799_999_999)
            if mmsi not in used_mmsis:
                used_mmsis.add(mmsi)
                break
        type_code = rng.choice(_TYPE_CODES)
        conflict_code = None
        if anomaly == ANOMALY_TYPE_CONFLICT:
            conflict_code = rng.choice([c for c in _TYPE_CODES if c != type_code])
        legs = rng.randint(2, 4)
        route = [hub_id]
        for _ in range(legs):
            route.append(rng.choice([p for p in other_ids + [hub_id] if p != route[-1]]))
        plans.append(
            ShipPlan(
                mmsi=mmsi,
                name=f"SYNTH FLEET {i + 1:02d}",
                type_code=type_code,
                route=route,
                msg_type=18 if i % 4 == 3 else 1,
                channel="A" if i % 2 == 0 else "B",
                anomaly=anomaly,
                conflict_type_code=conflict_code,
            )
        )
    return plans


def _bearing_deg(lat1: float, lon1: float, lat2: float, lon2: float) -> float:
    phi1, phi2 = math.radians(lat1), math.radians(lat2)
    dlam = math.radians(lon2 - lon1)
    x = math.sin(dlam) * math.cos(phi2)
    y = math.cos(phi1) * math.sin(phi2) - math.sin(phi1) * math.cos(phi2) * math.cos(dlam)
    return (math.degrees(math.atan2(x, y)) + 360.0) % 360.0


def _simulate_ship(
    rng: random.Random,
    plan: ShipPlan,
    ports: PortIndex,
    start_time: float,
    dwell_cadence: float,
    cruise_cadence: float,
    max_readings: int | None = None,
) -> tuple[list[PositionReading], list[tuple[float, VesselRecord]]]:
    readings: list[PositionReading] = []
    statics: list[tuple[float, VesselRecord]] = []
    t = start_time
    route = plan.route
    if max_readings is not None:
        # loop the route until the reading budget is met (each stop yields
        # at least 12 dwell readings; overshoot is trimmed below)
        loops: list[str] = []
        while len(loops) * 12 < max_readings:
            loops.extend(route if not loops else route[1:])
        route = loops

    def done() -> bool:
        return max_readings is not None and len(readings) >= max_readings

    def emit(lat: float, lon: float, sog: float, cog: float) -> None:
        readings.append(
            PositionReading(plan.mmsi, t, round(lat, 6), round(lon, 6),
                            sog, cog, plan.msg_type)
        )

    static_count = 0
    for leg_idx, port_id in enumerate(route):
        port = ports.get(port_id)
        if port is None:
            raise ConfigError(f"route references unknown port {port_id!r}")
        # dwell below the speed cap, jittered around the port
        type_code = plan.type_code
        if plan.conflict_type_code is not None and static_count % 2 == 1:
            type_code = plan.conflict_type_code
        statics.append(
            (
                t,
                VesselRecord(
                    mmsi=plan.mmsi,
                    vessel_type_code=type_code,
                    name=plan.name,
                    flag=mmsi_flag(plan.mmsi),
                    length_m=rng.randint(40, 300),
                    beam_m=rng.randint(8, 40),
                ),
            )
        )
        static_count += 1
        for _ in range(rng.randint(12, 30)):
            if done():
                break
            lat = port.location.lat + rng.randint(-300, 300) / 100000.0
            lon = port.location.lon + rng.randint(-300, 300) / 100000.0
            emit(lat, lon, rng.randint(0, 19) / 10.0, rng.randint(0, 3599) / 10.0)
            t += dwell_cadence
        if done() or leg_idx == len(route) - 1:
            break
        # cruise to the next port
        dest = ports.get(route[leg_idx + 1])
        speed_kn = rng.randint(80, 140) / 10.0
        dist_km = _haversine(
            port.location.lat, port.location.lon, dest.location.lat, dest.location.lon
        )
        if dist_km == 0.0:  # looped route revisiting itself back-to-back
            t += cruise_cadence
            continue
        hours = dist_km / (speed_kn * KM_PER_KNOT_HOUR)
        steps = max(2, int(hours * 3600.0 / cruise_cadence))
        cog = round(
            _bearing_deg(
                port.location.lat, port.location.lon,
                dest.location.lat, dest.location.lon,
            ),
            1,
        ) % 360.0
        for step in range(1, steps):
            if done():
                break
            frac = step / steps
            lat = port.location.lat + (dest.location.lat - port.location.lat) * frac
            lon = port.location.lon + (dest.location.lon - port.location.lon) * frac
            emit(lat, lon, speed_kn, cog)
            t += cruise_cadence
    if plan.anomaly == ANOMALY_TELEPORT and len(readings) >= 3:
        i = rng.randint(1, len(readings) - 2)
        r = readings[i]
        shift = -5.0 if r.lat > 84.0 else 5.0
        readings[i] = r._replace(lat=r.lat + shift)
    if max_readings is not None:
        del readings[max_readings:]
    return readings, statics


def generate_fleet(
    seed: int,
    n_ships: int,
    ports: PortIndex,
    hub_id: str | None = None,
    base_time: float = 1578441600.0,  # 2020-01-08T00:00:00Z
    dwell_cadence: float = 120.0,
    cruise_cadence: float = 600.0,
    anomalies: list[str] | None = None,
    emit_nmea: bool = True,
    total_readings: int | None = None,
) -> FleetOutput:
    """Simulate the fleet; same arguments produce identical output bytes."""
    if n_ships < 1:
        raise ConfigError("need at least one ship")
    for kind in anomalies or []:
        if kind not in KNOWN_ANOMALIES:
            raise ConfigError(f"unknown anomaly {kind!r}; known: {KNOWN_ANOMALIES}")
    if not ports.ports:
        raise ConfigError("empty port fixture")
    rng = random.Random(seed)
    hub = hub_id or sorted(p.port_id for p in ports.ports)[0]
    if ports.get(hub) is None:
        raise ConfigError(f"hub port {hub!r} not in fixture")
    plans = _plan_ships(rng, ports, n_ships, hub, list(anomalies or []))
    per_ship = None if total_readings is None else total_readings // n_ships
    extra = 0 if total_readings is None else total_readings % n_ships

    out = FleetOutput(plans=plans)
    events: list[tuple[float, int, int, str]] = []  # (ts, mmsi, order, line)
    t_min, t_max = math.inf, -math.inf
    for i, plan in enumerate(plans):
        budget = None if per_ship is None else per_ship + (1 if i < extra else 0)
        readings, statics = _simulate_ship(
            rng, plan, ports, base_time + i * 300.0, dwell_cadence, cruise_cadence,
            max_readings=budget,
        )
        out.readings.extend(readings)
        out.vessels.extend(v for _, v in statics)
        if readings:
            t_min = min(t_min, readings[0].timestamp)
            t_max = max(t_max, readings[-1].timestamp)
        if emit_nmea:
            order = 0
            for r in readings:
                bits = encode_position_report(r, ts_seconds=int(r.timestamp) % 60)
                for line in to_sentences(bits, plan.channel, receiver_timestamp=r.timestamp):
                    events.append((r.timestamp, plan.mmsi, order, line))
                    order += 1
            for seq_no, (ts, record) in enumerate(statics):
                bits = encode_static_report(record)
                for line in to_sentences(
                    bits, plan.channel, sequence_id=seq_no % 10, receiver_timestamp=ts
                ):
                    events.append((ts, plan.mmsi, order, line))
                    order += 1
    if emit_nmea:
        events.sort(key=lambda e: (e[0], e[1], e[2]))
        out.nmea_lines = [e[3] for e in events]
    if math.isinf(t_min):
        t_min = t_max = base_time
    out.time_span = (t_min, t_max)
    return out


def write_routes_csv(out: TextIO, fleet: FleetOutput) -> int:
    out.write("mmsi,leg,origin_port_id,dest_port_id\n")
    n = 0
    for plan in fleet.plans:
        for leg, (a, b) in enumerate(zip(plan.route, plan.route[1:])):
            out.write(f"{plan.mmsi},{leg},{a},{b}\n")
            n += 1
    return n


def write_manifest_json(out: TextIO, fleet: FleetOutput, seed: int) -> None:
    doc = {"seed": seed, "n_ships": len(fleet.plans)}
    doc.update(fleet.manifest())
    json.dump(doc, out, indent=2, sort_keys=True)
    out.write("\n")


def write_scenario_cfg(out: TextIO, fleet: FleetOutput, ports: PortIndex, hub_id: str) -> None:
    """Pipeline config (key=value) matching the generated scenario."""
    hub = ports.get(hub_id)
    t0, t1 = fleet.time_span
    out.write(f"lat = {hub.location.lat}\n")
    out.write(f"lon = {hub.location.lon}\n")
    out.write("radius-km = 50\n")
    out.write("max-knots = 2\n")
    out.write(f"from = {t0 - 60.0:.0f}\n")
    out.write(f"to = {t1 + 60.0:.0f}\n")
    out.write("snap-km = 50\n")


def write_fleet_nmea(out: TextIO, fleet: FleetOutput) -> int:
    for line in fleet.nmea_lines:
        out.write(line)
        out.write("\n")
    return len(fleet.nmea_lines)


def write_fleet_csv(out: TextIO, fleet: FleetOutput) -> int:
    return write_readings_csv(out, fleet.readings)


def write_fleet_vessels_csv(out: TextIO, fleet: FleetOutput) -> int:
    return write_vessels_csv(out, fleet.vessels)
