import io
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import make_trackset, reading
from shipflow.errors import ConfigError
from shipflow.messages import VesselRecord
from shipflow.stream import write_readings_csv
from shipflow.tracks import (
    attach_vessels,
    ingest_csv,
    iter_readings,
    load_vessels_csv,
    merge,
    parse_timestamp,
    trackset_from_readings,
)

HEADER = "mmsi,timestamp,lat,lon,sog_knots,cog_deg,msg_type\n"


def ingest(text, **kw):
    return ingest_csv(io.StringIO(text), **kw)


def test_empty_file_with_header():
    ts = ingest(HEADER)
    assert ts.tracks == {}
    assert ts.stats.rows_in == 0
    assert ts.stats.readings_kept == 0
    assert ts.stats.dropped == {}


def test_rows_sorted_within_track():
    text = HEADER + (
        "200000001,300,1.0,2.0,5.0,0.0,1\n"
        "200000001,100,1.1,2.1,5.0,0.0,1\n"
        "200000001,200,1.2,2.2,5.0,0.0,1\n"
    )
    ts = ingest(text)
    stamps = [r.timestamp for r in ts.tracks[200000001].readings]
    assert stamps == [100.0, 200.0, 300.0]


def test_exact_duplicate_collapses():
    row = "200000001,100,1.0,2.0,5.0,0.0,1\n"
    ts = ingest(HEADER + row + row)
    assert ts.stats.readings_kept == 1
    assert ts.stats.dropped == {"duplicate": 1}


def test_missing_required_column_lists_headers():
    with pytest.raises(ConfigError) as exc:
        ingest("mmsi,when,lat,lon,sog_knots\n")
    assert "when" in str(exc.value) or "timestamp" in str(exc.value)
    assert "available headers" in str(exc.value)


def test_custom_column_mapping():
    text = "id,t,y,x,v\n200000001,100,1.0,2.0,5.0\n"
    ts = ingest(
        text,
        columns={"mmsi": "id", "timestamp": "t", "lat": "y", "lon": "x", "sog": "v"},
    )
    assert ts.stats.readings_kept == 1
    r = ts.tracks[200000001].readings[0]
    assert (r.lat, r.lon, r.sog_knots, r.cog_deg) == (1.0, 2.0, 5.0, None)


def test_unparseable_rows_counted_not_fatal():
    text = HEADER + (
        "not-a-number,100,1.0,2.0,5.0,0.0,1\n"
        "200000001,nope,1.0,2.0,5.0,0.0,1\n"
        "200000001,100,1.0,2.0,5.0,0.0,1\n"
    )
    ts = ingest(text)
    assert ts.stats.rows_in == 3
    assert ts.stats.readings_kept == 1
    assert ts.stats.dropped["unparseable_row"] == 2


def test_blank_position_is_kept_but_flagged():
    text = HEADER + "200000001,100,,,0.5,0.0,1\n"
    ts = ingest(text)
    r = ts.tracks[200000001].readings[0]
    assert r.lat is None and r.lon is None and not r.has_position
    assert ts.stats.readings_kept == 1


def test_missing_timestamp_dropped():
    text = HEADER + "200000001,,1.0,2.0,5.0,0.0,1\n"
    ts = ingest(text)
    assert ts.stats.readings_kept == 0
    assert ts.stats.dropped == {"missing_timestamp": 1}


def test_out_of_range_coordinates_dropped():
    text = HEADER + "200000001,100,95.0,2.0,5.0,0.0,1\n"
    ts = ingest(text)
    assert ts.stats.readings_kept == 0
    assert ts.stats.dropped == {"bad_coordinates": 1}


def test_rfc3339_timestamps():
    assert parse_timestamp("2020-01-08T00:00:00Z") == 1578441600.0
    assert parse_timestamp("2020-01-08T01:00:00+01:00") == 1578441600.0
    assert parse_timestamp("2020-01-08 00:00:00") == 1578441600.0
    assert parse_timestamp("1578441600") == 1578441600.0


def test_rfc3339_rows_ingest():
    text = HEADER + "200000001,2020-01-08T00:00:00Z,1.0,2.0,5.0,0.0,1\n"
    ts = ingest(text)
    assert ts.tracks[200000001].readings[0].timestamp == 1578441600.0


def test_merge_with_empty_is_identity():
    a = make_trackset({200000001: [reading(ts=1.0), reading(ts=2.0, lat=0.5)]})
    empty = make_trackset({})
    merged = merge(a, empty)
    assert {m: t.readings for m, t in merged.tracks.items()} == {
        m: t.readings for m, t in a.tracks.items()
    }


def test_merge_counts_cross_duplicates():
    shared = reading(ts=5.0, lat=1.0, lon=1.0)
    a = make_trackset({200000001: [shared, reading(ts=1.0)]})
    b = make_trackset({200000001: [shared, reading(ts=9.0, lat=2.0)]})
    merged = merge(a, b)
    assert merged.stats.readings_kept == 3
    assert merged.stats.dropped.get("duplicate") == 1
    assert a.stats.readings_kept + b.stats.readings_kept == 3 + 1


def test_merge_commutes_on_tracks():
    rng = random.Random(3)
    fleets = []
    for _ in range(2):
        fleet = {}
        for m in (200000001, 200000002, 200000003):
            fleet[m] = [
                reading(mmsi=m, ts=rng.randint(0, 50), lat=rng.randint(0, 5) / 2,
                        lon=rng.randint(0, 5) / 2)
                for _ in range(rng.randint(0, 10))
            ]
        fleets.append(make_trackset(fleet))
    ab = merge(fleets[0], fleets[1])
    ba = merge(fleets[1], fleets[0])
    assert {m: t.readings for m, t in ab.tracks.items()} == {
        m: t.readings for m, t in ba.tracks.items()
    }


def test_ingest_is_idempotent():
    text = HEADER + (
        "200000001,300,1.0,2.0,5.0,0.0,1\n"
        "200000002,100,1.1,2.1,,,1\n"
        "200000001,100,1.2,,5.0,0.0,1\n"
    )
    once = ingest(text)
    buf = io.StringIO()
    write_readings_csv(buf, iter_readings(once))
    twice = ingest(buf.getvalue())
    assert {m: t.readings for m, t in twice.tracks.items()} == {
        m: t.readings for m, t in once.tracks.items()
    }


def test_reading_never_changes_mmsi():
    text = HEADER + "200000001,100,1.0,2.0,5.0,0.0,1\n200000002,50,3.0,4.0,1.0,0.0,1\n"
    ts = ingest(text)
    for mmsi, track in ts.tracks.items():
        assert all(r.mmsi == mmsi for r in track.readings)


@settings(max_examples=60, deadline=None)
@given(st.lists(
    st.tuples(
        st.sampled_from([200000001, 200000002]),
        st.integers(min_value=0, max_value=30),
        st.integers(min_value=-3, max_value=3),
    ),
    max_size=40,
))
def test_stats_conservation(rows):
    lines = [HEADER.strip()]
    for mmsi, t, v in rows:
        lines.append(f"{mmsi},{t},{v}.0,{v}.0,1.0,0.0,1")
    ts = ingest("\n".join(lines) + "\n")
    assert ts.stats.rows_in == len(rows)
    assert ts.stats.rows_in == ts.stats.readings_kept + ts.stats.dropped_total


def test_load_and_attach_vessels():
    csv_text = (
        "mmsi,vessel_type_code,name,flag,length_m,beam_m\n"
        "200000001,70,CARGO ONE,200,120,20\n"
        "200000001,70,CARGO ONE,200,120,20\n"
        "200000009,60,,200,,\n"
    )
    records = load_vessels_csv(io.StringIO(csv_text))
    assert len(records) == 3
    assert records[0] == VesselRecord(200000001, 70, "CARGO ONE", "200", 120, 20)
    ts = make_trackset({200000001: [reading()]})
    assert attach_vessels(ts, records) == 1
    assert ts.tracks[200000001].vessel.name == "CARGO ONE"


def test_trackset_from_readings_groups_by_mmsi():
    rs = [reading(mmsi=200000001, ts=2.0), reading(mmsi=200000002, ts=1.0),
          reading(mmsi=200000001, ts=1.0, lat=3.0)]
    ts = trackset_from_readings(rs, "unit")
    assert sorted(ts.tracks) == [200000001, 200000002]
    assert len(ts.tracks[200000001].readings) == 2
    assert ts.provenance == "unit"
