import random

import pytest

from conftest import make_trackset, random_fleet, random_types, reading
from oracles import reference_clean
from shipflow.cleaning import (
    FilterConfig,
    clean,
    drop_micro_moves,
    filter_conflicting_vessel_type,
    filter_invalid_mmsi,
    filter_speed_jumps,
    wrapped_lon_delta,
)
from shipflow.errors import ConfigError
from shipflow.messages import VesselRecord


def kept_sets(ts):
    return {m: list(t.readings) for m, t in ts.tracks.items()}


# ------------------------------------------------------------ rule 1: MMSI

def test_eight_digit_mmsi_dropped():
    ts = make_trackset({12345678: [reading(mmsi=12345678)]})
    out, report = filter_invalid_mmsi(ts, FilterConfig())
    assert out.tracks == {}
    assert report.rules["invalid_mmsi"].ships == 1
    assert report.rules["invalid_mmsi"].readings == 1


def test_nine_digit_boundary_kept():
    ts = make_trackset({100000000: [reading(mmsi=100000000)]})
    out, report = filter_invalid_mmsi(ts, FilterConfig())
    assert 100000000 in out.tracks
    assert report.rules["invalid_mmsi"].ships == 0


def test_empty_trackset_zero_counts():
    out, report = filter_invalid_mmsi(make_trackset({}), FilterConfig())
    assert out.tracks == {}
    assert report.input_ships == 0
    assert report.kept_ships == 0


# -------------------------------------------------- rule 2: type conflicts

def _vessel(mmsi, code):
    return VesselRecord(mmsi, code, "X", "123")


def test_two_types_dropped():
    m = 200000001
    ts = make_trackset({m: [reading(mmsi=m)]})
    out, report = filter_conflicting_vessel_type(ts, [_vessel(m, 70), _vessel(m, 80)])
    assert out.tracks == {}
    assert report.rules["conflicting_type"].ships == 1


def test_same_type_twice_kept():
    m = 200000001
    ts = make_trackset({m: [reading(mmsi=m)]})
    out, _ = filter_conflicting_vessel_type(ts, [_vessel(m, 70), _vessel(m, 70)])
    assert m in out.tracks


def test_no_static_record_kept():
    m = 200000001
    ts = make_trackset({m: [reading(mmsi=m)]})
    out, _ = filter_conflicting_vessel_type(ts, [])
    assert m in out.tracks
    out, _ = filter_conflicting_vessel_type(ts, None)
    assert m in out.tracks


# ---------------------------------------------------- rule 3: micro-moves

def micro_track(*coords, mmsi=200000001):
    return make_trackset(
        {mmsi: [reading(mmsi=mmsi, ts=float(i * 60), lat=la, lon=lo)
                for i, (la, lo) in enumerate(coords)]}
    )


def test_identical_coordinates_second_dropped():
    ts = micro_track((10.0, 20.0), (10.0, 20.0))
    out, report = drop_micro_moves(ts, FilterConfig())
    assert len(out.tracks[200000001].readings) == 1
    assert report.rules["micro_moves"].readings == 1


def test_one_axis_exceeding_keeps_the_reading():
    ts = micro_track((10.0, 20.0), (10.002, 20.0))
    out, _ = drop_micro_moves(ts, FilterConfig())
    assert len(out.tracks[200000001].readings) == 2


def test_threshold_boundary_is_strict_less_than():
    # base 0.0 keeps the delta exactly representable: 0.001 is NOT below 0.001
    ts = micro_track((0.0, 20.0), (0.001, 20.0))
    out, _ = drop_micro_moves(ts, FilterConfig())
    assert len(out.tracks[200000001].readings) == 2


def test_chain_of_small_steps_compares_to_last_kept():
    coords = [(10.0 + i * 0.0005, 20.0) for i in range(5)]
    ts = micro_track(*coords)
    out, _ = drop_micro_moves(ts, FilterConfig())
    # brute scan: a point is dropped iff below threshold vs the last KEPT point
    kept_expect = []
    last = None
    for la, lo in coords:
        if last is None or abs(la - last[0]) >= 0.001 or abs(lo - last[1]) >= 0.001:
            kept_expect.append((la, lo))
            last = (la, lo)
    got = [(r.lat, r.lon) for r in out.tracks[200000001].readings]
    assert got == kept_expect
    # under last-SEEN comparison every follow-up step (0.0005) would vanish;
    # anchoring to last-kept retains the drift at threshold granularity
    assert len(got) > 1


def test_first_reading_always_kept():
    ts = micro_track((10.0, 20.0))
    out, _ = drop_micro_moves(ts, FilterConfig())
    assert len(out.tracks[200000001].readings) == 1


def test_micro_move_wraps_longitude():
    ts = micro_track((0.0, 179.99995), (0.0, -179.99995))  # 0.0001 across the seam
    out, _ = drop_micro_moves(ts, FilterConfig())
    assert len(out.tracks[200000001].readings) == 1


# --------------------------------------------------------- rule 4: jumps

def jump_track(pairs, mmsi=200000001):
    return make_trackset(
        {mmsi: [reading(mmsi=mmsi, ts=t, lat=la, lon=lo) for t, la, lo in pairs]}
    )


def test_two_degrees_in_an_hour_drops_the_ship():
    ts = jump_track([(0.0, 10.0, 20.0), (3600.0, 12.0, 20.0)])
    out, report = filter_speed_jumps(ts, FilterConfig())
    assert out.tracks == {}
    assert report.rules["jumps"].ships == 1
    assert report.rules["jumps"].readings == 2


def test_exactly_the_limit_is_kept():
    ts = jump_track([(0.0, 10.0, 20.0), (3600.0, 11.7, 20.0)])
    out, _ = filter_speed_jumps(ts, FilterConfig())
    assert 200000001 in out.tracks


def test_just_over_the_limit_is_dropped():
    ts = jump_track([(0.0, 10.0, 20.0), (3600.0, 11.7 + 1e-6, 20.0)])
    out, _ = filter_speed_jumps(ts, FilterConfig())
    assert out.tracks == {}


def test_zero_dt_with_displacement_drops():
    ts = jump_track([(0.0, 10.0, 20.0), (0.0, 10.1, 20.0)])
    out, _ = filter_speed_jumps(ts, FilterConfig())
    assert out.tracks == {}


def test_zero_dt_zero_displacement_kept():
    ts = jump_track([(0.0, 10.0, 20.0), (0.0, 10.0, 20.0)])
    # duplicates collapse at ingest, so construct the pair artificially
    assert len(ts.tracks) == 1  # collapsed to one reading anyway
    out, _ = filter_speed_jumps(ts, FilterConfig())
    assert 200000001 in out.tracks


def test_jump_measured_per_axis_with_wrapped_longitude():
    # 0.4 degrees across the antimeridian in 1 hour: fine
    ts = jump_track([(0.0, 0.0, 179.8), (3600.0, 0.0, -179.8)])
    out, _ = filter_speed_jumps(ts, FilterConfig())
    assert 200000001 in out.tracks
    # the unwrapped difference (359.6 degrees) would have dropped it
    assert wrapped_lon_delta(179.8, -179.8) == pytest.approx(0.4)


# ------------------------------------------------------------- clean(...)

def test_clean_on_clean_data_changes_nothing():
    fleet = {
        200000001: [reading(ts=0.0), reading(ts=600.0, lat=0.01),
                    reading(ts=1200.0, lat=0.02)],
    }
    ts = make_trackset(fleet)
    out, report = clean(ts, FilterConfig())
    assert kept_sets(out) == kept_sets(ts)
    for name, drops in report.rules.items():
        assert drops.ships == 0 and drops.readings == 0, name


def test_clean_is_idempotent():
    rng = random.Random(99)
    fleet = random_fleet(rng, max_ships=20, max_readings=60)
    types = random_types(rng, fleet)
    statics = {m: set(ts_) for m, ts_ in types.items()}
    once, _ = clean(make_trackset(fleet), FilterConfig(), statics)
    twice, report = clean(once, FilterConfig(), statics)
    assert kept_sets(twice) == kept_sets(once)
    assert report.kept_readings == report.input_readings


def test_one_offender_per_rule_attributed_correctly():
    good = 200000001
    bad_mmsi = 12345678
    conflicted = 200000002
    jumper = 200000003
    drifter = 200000004
    fleet = {
        good: [reading(mmsi=good, ts=0.0), reading(mmsi=good, ts=600.0, lat=0.01)],
        bad_mmsi: [reading(mmsi=bad_mmsi, ts=0.0)],
        conflicted: [reading(mmsi=conflicted, ts=0.0)],
        jumper: [reading(mmsi=jumper, ts=0.0),
                 reading(mmsi=jumper, ts=3600.0, lat=5.0)],
        drifter: [reading(mmsi=drifter, ts=0.0),
                  reading(mmsi=drifter, ts=600.0, lat=0.0004),
                  reading(mmsi=drifter, ts=1200.0, lat=0.02)],
    }
    statics = {conflicted: {70, 80}}
    out, report = clean(make_trackset(fleet), FilterConfig(), statics)
    assert report.rules["invalid_mmsi"].ships == 1
    assert report.rules["conflicting_type"].ships == 1
    assert report.rules["jumps"].ships == 1
    assert report.rules["micro_moves"].readings == 1
    assert sorted(out.tracks) == [good, drifter]
    # per-rule counts account for every dropped reading
    dropped_readings = sum(d.readings for d in report.rules.values())
    assert report.input_readings == report.kept_readings + dropped_readings


def test_clean_matches_reference_on_random_fleets():
    rng = random.Random(2024)
    for _ in range(25):
        fleet = random_fleet(rng, max_ships=12, max_readings=50)
        types = random_types(rng, fleet)
        ts = make_trackset(fleet)
        canonical = {m: list(t.readings) for m, t in ts.tracks.items()}
        expected = reference_clean(canonical, types)
        got, _ = clean(ts, FilterConfig(), types)
        assert kept_sets(got) == expected


def test_monotonic_never_adds():
    rng = random.Random(5)
    fleet = random_fleet(rng, max_ships=10, max_readings=40)
    ts = make_trackset(fleet)
    out, _ = clean(ts, FilterConfig())
    assert set(out.tracks) <= set(ts.tracks)
    for m, track in out.tracks.items():
        assert len(track.readings) <= len(ts.tracks[m].readings)


def test_order_preserved_within_tracks():
    rng = random.Random(6)
    fleet = random_fleet(rng, max_ships=6, max_readings=40)
    ts = make_trackset(fleet)
    out, _ = clean(ts, FilterConfig())
    for track in out.tracks.values():
        stamps = [r.timestamp for r in track.readings]
        assert stamps == sorted(stamps)


def test_report_serialization_round():
    ts = make_trackset({12345678: [reading(mmsi=12345678)]})
    _, report = clean(ts, FilterConfig())
    kv = report.to_kv_text()
    assert "invalid_mmsi.ships_dropped=1" in kv
    assert kv.endswith("\n")
    csv_text = report.to_csv_text()
    assert csv_text.startswith("metric,value\n")
    assert "invalid_mmsi.ships_dropped,1" in csv_text


def test_thresholds_must_be_positive():
    with pytest.raises(ConfigError):
        FilterConfig(micro_move_threshold_deg=0.0)
    with pytest.raises(ConfigError):
        FilterConfig(max_jump_rate_deg_per_hr=-1)
    with pytest.raises(ConfigError):
        FilterConfig(min_mmsi_digits=0)


def test_conflict_rule_can_be_disabled():
    m = 200000002
    ts = make_trackset({m: [reading(mmsi=m)]})
    cfg = FilterConfig(drop_conflicting_vessel_types=False)
    out, _ = clean(ts, cfg, {m: {70, 80}})
    assert m in out.tracks
