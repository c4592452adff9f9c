from __future__ import annotations

import random
from pathlib import Path

import pytest

from shipflow.messages import PositionReading
from shipflow.ports import load_wpi
from shipflow.tracks import trackset_from_readings

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def ports20_path() -> Path:
    return FIXTURES / "ports20.csv"


@pytest.fixture(scope="session")
def ports20(ports20_path):
    with open(ports20_path, newline="") as f:
        return load_wpi(f)


@pytest.fixture(scope="session")
def fleet8_dir() -> Path:
    return FIXTURES / "fleet8"


def reading(
    mmsi=200000001,
    ts=0.0,
    lat=0.0,
    lon=0.0,
    sog=0.0,
    cog=0.0,
    msg_type=1,
) -> PositionReading:
    return PositionReading(mmsi, ts, lat, lon, sog, cog, msg_type)


def make_trackset(fleet: dict[int, list[PositionReading]], provenance="test"):
    readings = [r for rs in fleet.values() for r in rs]
    return trackset_from_readings(readings, provenance)


def random_fleet(rng: random.Random, max_ships=50, max_readings=200):
    """Random fleet exercising every filter rule; returns dict mmsi->readings.

    Readings are emitted time-sorted per ship.
    """
    fleet: dict[int, list[PositionReading]] = {}
    n_ships = rng.randint(1, max_ships)
    for _ in range(n_ships):
        if rng.random() < 0.15:
            mmsi = rng.randint(1000, 99_999_999)  # too short
        else:
            mmsi = rng.randint(100_000_000, 999_999_999)
        if mmsi in fleet:
            continue
        n = rng.randint(0, max_readings)
        lat = rng.uniform(-80, 80)
        lon = rng.uniform(-179, 179)
        t = rng.uniform(0, 1_000_000)
        readings = []
        for _ in range(n):
            style = rng.random()
            if style < 0.08:
                readings.append(PositionReading(mmsi, t, None, None, None, None, 1))
            else:
                if style < 0.45:
                    step = rng.uniform(0, 0.0009)  # micro-scale drift
                elif style < 0.9:
                    step = rng.uniform(0.002, 0.05)  # ordinary movement
                else:
                    step = rng.uniform(0.5, 3.0)  # possible jump
                lat = max(-85.0, min(85.0, lat + rng.choice((-1, 1)) * step))
                lon += rng.choice((-1, 1)) * step
                lon = (lon + 180.0) % 360.0 - 180.0
                sog = None if rng.random() < 0.05 else rng.uniform(0, 30)
                readings.append(
                    PositionReading(mmsi, t, round(lat, 6), round(lon, 6), sog, 0.0, 1)
                )
            if rng.random() >= 0.04:  # else repeat the timestamp: zero-dt pair
                t += rng.uniform(1, 3600)
        fleet[mmsi] = readings
    return fleet


def random_types(rng: random.Random, fleet) -> dict[int, set[int]]:
    """Static type observations; ~15% of ships get a conflicting second type."""
    types: dict[int, set[int]] = {}
    for mmsi in fleet:
        roll = rng.random()
        if roll < 0.25:
            continue  # no static record at all
        first = rng.randint(0, 99)
        types[mmsi] = {first}
        if roll > 0.85:
            types[mmsi].add((first + rng.randint(1, 50)) % 100)
    return types
