"""Command-line interface.

Subcommands compose the library into the end-to-end workflow:

    decode    NMEA lines -> readings CSV (+ vessels CSV)
    ingest    readings CSVs -> one normalized readings CSV
    clean     readings CSV -> filtered readings CSV + filter report
    select    readings CSV -> qualifying MMSIs (+ extracted readings)
    od        full pipeline: ingest -> clean -> select -> extract -> OD matrix
    tracks    readings CSV -> GeoJSON / CSV track export
    generate  synthetic fleet + ground-truth routes + anomaly manifest
    stats     summarize an OD matrix CSV

Exit codes: 0 success, 1 I/O failure, 2 configuration error, 3 empty
result (outputs still written, with headers).
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import Callable

from .cleaning import FilterConfig, clean
from .config import FENCE_PRESETS, load_config, load_fences
from .errors import ConfigError
from .fleetgen import (
    KNOWN_ANOMALIES,
    generate_fleet,
    write_fleet_csv,
    write_fleet_nmea,
    write_fleet_vessels_csv,
    write_manifest_json,
    write_routes_csv,
    write_scenario_cfg,
)
from .geo import Geofence, GeoPoint, SelectionQuery, extract_window, select_mmsis
from .geojson import DEFAULT_GAP_HOURS, write_geojson, write_tracks_csv
from .messages import PositionReading
from .odmatrix import (
    build_od,
    matrix_stats,
    snap_track,
    stats_text,
    write_od_csv,
    write_od_grid,
    write_port_calls_csv,
)
from .ports import DEFAULT_SNAP_KM, load_wpi
from .stream import (
    READINGS_HEADER,
    DecodeStats,
    iter_decoded,
    write_readings_csv,
    write_vessels_csv,
)
from .tracks import (
    ingest_csv,
    iter_readings,
    load_vessels_csv,
    merge,
    parse_timestamp,
    trackset_from_readings,
    attach_vessels,
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_CONFIG = 2
EXIT_EMPTY = 3

log = logging.getLogger("shipflow")


def _add_column_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--col-mmsi", default=None, help="CSV column holding the MMSI")
    p.add_argument("--col-timestamp", default=None)
    p.add_argument("--col-lat", default=None)
    p.add_argument("--col-lon", default=None)
    p.add_argument("--col-sog", default=None, help="speed-over-ground column")
    p.add_argument("--col-cog", default=None)
    p.add_argument("--col-msg-type", default=None)


def _column_map(args: argparse.Namespace) -> dict[str, str]:
    mapping = {}
    for field, attr in (
        ("mmsi", "col_mmsi"),
        ("timestamp", "col_timestamp"),
        ("lat", "col_lat"),
        ("lon", "col_lon"),
        ("sog", "col_sog"),
        ("cog", "col_cog"),
        ("msg_type", "col_msg_type"),
    ):
        value = getattr(args, attr, None)
        if value:
            mapping[field] = value
    return mapping


def _add_filter_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--min-mmsi-digits", type=int, default=None)
    p.add_argument("--micro-move-deg", type=float, default=None)
    p.add_argument("--max-jump-deg-hr", type=float, default=None)
    p.add_argument(
        "--keep-conflicting-types",
        action="store_true",
        help="do not drop ships observed with multiple vessel types",
    )


def _filter_config(args: argparse.Namespace, cfg: dict[str, str]) -> FilterConfig:
    return FilterConfig(
        min_mmsi_digits=_eff(args, cfg, "min_mmsi_digits", "min-mmsi-digits", 9, int),
        micro_move_threshold_deg=_eff(
            args, cfg, "micro_move_deg", "micro-move-deg", 0.001, float
        ),
        max_jump_rate_deg_per_hr=_eff(
            args, cfg, "max_jump_deg_hr", "max-jump-deg-hr", 1.7, float
        ),
        drop_conflicting_vessel_types=not getattr(args, "keep_conflicting_types", False),
    )


def _add_query_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lat", type=float, default=None, help="fence center latitude")
    p.add_argument("--lon", type=float, default=None, help="fence center longitude")
    p.add_argument("--radius-km", type=float, default=None)
    p.add_argument("--max-knots", type=float, default=None)
    p.add_argument("--from", dest="window_from", default=None,
                   help="window start (epoch seconds or RFC 3339)")
    p.add_argument("--to", dest="window_to", default=None)
    p.add_argument("--fence", default=None,
                   help=f"named fence preset ({', '.join(sorted(FENCE_PRESETS))}, "
                        "or a name from --fences)")
    p.add_argument("--fences", default=None, help="file of named fences (name = lat,lon,km)")


def _eff(args, cfg: dict[str, str], attr: str, key: str, fallback, conv):
    """Effective option value: explicit flag > config file > fallback."""
    value = getattr(args, attr, None)
    if value is not None:
        return value
    if key in cfg:
        try:
            return conv(cfg[key])
        except (TypeError, ValueError):
            raise ConfigError(f"config key {key!r}: bad value {cfg[key]!r}") from None
    return fallback


def _query_from(args: argparse.Namespace, cfg: dict[str, str]) -> SelectionQuery | None:
    fence: Geofence | None = None
    fences = dict(FENCE_PRESETS)
    fences_path = _eff(args, cfg, "fences", "fences", None, str)
    if fences_path:
        fences = load_fences(fences_path)
    name = _eff(args, cfg, "fence", "fence", None, str)
    if name:
        if name not in fences:
            raise ConfigError(f"unknown fence {name!r}; known: {sorted(fences)}")
        fence = fences[name]
    lat = _eff(args, cfg, "lat", "lat", None, float)
    lon = _eff(args, cfg, "lon", "lon", None, float)
    radius = _eff(args, cfg, "radius_km", "radius-km", None, float)
    if lat is not None or lon is not None or radius is not None:
        if lat is None or lon is None or radius is None:
            raise ConfigError("--lat, --lon and --radius-km must be given together")
        fence = Geofence(GeoPoint(lat, lon), radius)
    if fence is None:
        return None
    t_from = _eff(args, cfg, "window_from", "from", None, str)
    t_to = _eff(args, cfg, "window_to", "to", None, str)
    if t_from is None or t_to is None:
        raise ConfigError("--from and --to are required when a fence is given")
    return SelectionQuery(
        fence=fence,
        max_speed_knots=_eff(args, cfg, "max_knots", "max-knots", 2.0, float),
        window=(parse_timestamp(str(t_from)), parse_timestamp(str(t_to))),
    )


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _ingest_paths(paths: list[str], columns: dict[str, str]):
    ts = None
    for path in paths:
        with open(path, encoding="utf-8", newline="") as f:
            part = ingest_csv(f, columns=columns, provenance=os.path.basename(path))
        ts = part if ts is None else merge(ts, part)
    return ts


# ---------------------------------------------------------------- decode

def cmd_decode(args: argparse.Namespace, cfg: dict[str, str]) -> int:
    stats = DecodeStats()
    vessels = []
    out, close_out = _open_out(args.output)
    try:
        import csv as _csv

        writer = _csv.writer(out, lineterminator="\n")
        writer.writerow(READINGS_HEADER)
        with open(args.input, encoding="utf-8", errors="replace") as f:
            from .stream import fmt_coord, fmt_tenths, fmt_timestamp

            for message in iter_decoded(f, stats):
                if isinstance(message, PositionReading):
                    stats.decoded_positions += 1
                    writer.writerow(
                        [
                            message.mmsi,
                            fmt_timestamp(message.timestamp),
                            fmt_coord(message.lat),
                            fmt_coord(message.lon),
                            fmt_tenths(message.sog_knots),
                            fmt_tenths(message.cog_deg),
                            message.msg_type,
                        ]
                    )
                else:
                    stats.decoded_static += 1
                    vessels.append(message)
    finally:
        if close_out:
            out.close()
    if args.vessels_out:
        with open(args.vessels_out, "w", encoding="utf-8", newline="") as f:
            write_vessels_csv(f, vessels)
    stats_text_block = "\n".join(f"{k}={v}" for k, v in stats.as_items()) + "\n"
    if args.stats_out:
        with open(args.stats_out, "w", encoding="utf-8") as f:
            f.write(stats_text_block)
    log.info("decode stats:\n%s", stats_text_block.rstrip())
    return EXIT_OK


# ---------------------------------------------------------------- ingest

def cmd_ingest(args: argparse.Namespace, cfg: dict[str, str]) -> int:
    ts = _ingest_paths(args.inputs, _column_map(args))
    out, close_out = _open_out(args.output)
    try:
        write_readings_csv(out, iter_readings(ts))
    finally:
        if close_out:
            out.close()
    log.info(
        "ingested %d rows -> kept %d readings across %d ships (dropped: %s)",
        ts.stats.rows_in, ts.stats.readings_kept, len(ts.tracks), ts.stats.dropped,
    )
    return EXIT_OK


# ----------------------------------------------------------------- clean

def cmd_clean(args: argparse.Namespace, cfg: dict[str, str]) -> int:
    ts = _ingest_paths(args.inputs, _column_map(args))
    static_records = None
    if args.vessels:
        with open(args.vessels, encoding="utf-8", newline="") as f:
            static_records = load_vessels_csv(f)
    cleaned, report = clean(ts, _filter_config(args, cfg), static_records)
    out, close_out = _open_out(args.output)
    try:
        write_readings_csv(out, iter_readings(cleaned))
    finally:
        if close_out:
            out.close()
    report_text = (
        report.to_csv_text() if args.report_format == "csv" else report.to_kv_text()
    )
    if args.report:
        with open(args.report, "w", encoding="utf-8") as f:
            f.write(report_text)
    else:
        sys.stderr.write(report_text)
    return EXIT_OK


# ---------------------------------------------------------------- select

def cmd_select(args: argparse.Namespace, cfg: dict[str, str]) -> int:
    query = _query_from(args, cfg)
    if query is None:
        raise ConfigError("select needs a fence: --lat/--lon/--radius-km or --fence")
    ts = _ingest_paths(args.inputs, _column_map(args))
    chosen = sorted(select_mmsis(ts, query))
    out, close_out = _open_out(args.output)
    try:
        for mmsi in chosen:
            out.write(f"{mmsi}\n")
    finally:
        if close_out:
            out.close()
    if args.extract_to:
        extracted = extract_window(ts, chosen, query)
        with open(args.extract_to, "w", encoding="utf-8", newline="") as f:
            write_readings_csv(f, iter_readings(extracted))
    log.info("selected %d of %d ships", len(chosen), len(ts.tracks))
    return EXIT_OK if chosen else EXIT_EMPTY


# -------------------------------------------------------------------- od

def cmd_od(args: argparse.Namespace, cfg: dict[str, str]) -> int:
    out_dir = args.out_dir
    os.makedirs(out_dir, exist_ok=True)

    def stage(name: str, fn: Callable):
        try:
            return fn()
        except ConfigError as exc:
            raise ConfigError(f"[{name}] {exc}") from exc

    ports_path = _eff(args, cfg, "ports", "ports", None, str)
    if not ports_path:
        raise ConfigError("[ports] --ports is required")
    with open(ports_path, encoding="utf-8", newline="") as f:
        port_index = stage("ports", lambda: load_wpi(f))
    log.info("loaded %d ports (%d rows skipped)", len(port_index), port_index.rows_skipped)

    input_format = args.input_format
    if input_format == "auto":
        input_format = _sniff_format(args.inputs[0])
    vessels = []
    if input_format == "nmea":
        readings = []
        stats = DecodeStats()
        for path in args.inputs:
            with open(path, encoding="utf-8", errors="replace") as f:
                for message in iter_decoded(f, stats):
                    if isinstance(message, PositionReading):
                        readings.append(message)
                    else:
                        vessels.append(message)
        ts = stage("ingest", lambda: trackset_from_readings(readings, "nmea"))
    else:
        ts = stage("ingest", lambda: _ingest_paths(args.inputs, _column_map(args)))
    if args.vessels:
        with open(args.vessels, encoding="utf-8", newline="") as f:
            vessels = load_vessels_csv(f)
    attach_vessels(ts, vessels)
    log.info("ingested %d readings across %d ships", ts.reading_count, len(ts.tracks))

    if args.skip_clean:
        cleaned = ts
        report = None
    else:
        cleaned, report = stage(
            "clean", lambda: clean(ts, _filter_config(args, cfg), vessels or None)
        )
        log.info("cleaning kept %d/%d readings", report.kept_readings, report.input_readings)

    query = stage("select", lambda: _query_from(args, cfg))
    if query is not None:
        chosen = sorted(select_mmsis(cleaned, query))
        with open(os.path.join(out_dir, "selected_mmsis.txt"), "w", encoding="utf-8") as f:
            for mmsi in chosen:
                f.write(f"{mmsi}\n")
        working = extract_window(cleaned, chosen, query)
        log.info("selected %d ships; extracted %d readings",
                 len(chosen), working.reading_count)
    else:
        working = cleaned

    snap_km = _eff(args, cfg, "snap_km", "snap-km", DEFAULT_SNAP_KM, float)
    dwell = _eff(args, cfg, "max_dwell_gap", "max-dwell-gap", None, float)
    matrix = stage(
        "od",
        lambda: build_od(working, port_index, snap_km, dwell, threads=args.threads),
    )

    matrix_name = "od_grid.csv" if args.format == "grid" else "od.csv"
    with open(os.path.join(out_dir, matrix_name), "w", encoding="utf-8", newline="") as f:
        if args.format == "grid":
            write_od_grid(f, matrix, value=args.grid_value)
        else:
            write_od_csv(f, matrix)
    if report is not None:
        report_text = (
            report.to_csv_text() if args.report_format == "csv" else report.to_kv_text()
        )
        with open(os.path.join(out_dir, "filter_report.txt"), "w", encoding="utf-8") as f:
            f.write(report_text)
    with open(os.path.join(out_dir, "matrix_stats.txt"), "w", encoding="utf-8") as f:
        f.write(stats_text(matrix_stats(matrix, top_k=args.top)))
    if args.calls_out:
        sequences = [
            snap_track(working.tracks[m], port_index, snap_km, dwell)
            for m in sorted(working.tracks)
        ]
        with open(args.calls_out, "w", encoding="utf-8", newline="") as f:
            write_port_calls_csv(f, sequences)
    log.info("matrix: %d edges, %d trips", len(matrix.edges), matrix.total_trips)
    return EXIT_OK if matrix.edges else EXIT_EMPTY


def _sniff_format(path: str) -> str:
    try:
        with open(path, encoding="utf-8", errors="replace") as f:
            for line in f:
                if line.strip():
                    return "nmea" if "!" in line.split(",", 1)[0] else "csv"
    except OSError:
        pass
    return "csv"


# ---------------------------------------------------------------- tracks

def cmd_tracks(args: argparse.Namespace, cfg: dict[str, str]) -> int:
    ts = _ingest_paths(args.inputs, _column_map(args))
    if args.vessels:
        with open(args.vessels, encoding="utf-8", newline="") as f:
            attach_vessels(ts, load_vessels_csv(f))
    try:
        mmsis = [int(m) for m in args.mmsi.split(",") if m.strip()]
    except ValueError:
        raise ConfigError(f"--mmsi expects comma-separated integers, got {args.mmsi!r}")
    if not mmsis:
        raise ConfigError("--mmsi list is empty")
    gap = _eff(args, cfg, "gap_hours", "gap-hours", DEFAULT_GAP_HOURS, float)
    try:
        out, close_out = _open_out(args.output)
        try:
            if args.format == "csv":
                write_tracks_csv(out, ts, mmsis)
            else:
                write_geojson(out, ts, mmsis, gap)
        finally:
            if close_out:
                out.close()
    except ValueError as exc:  # unknown MMSI, lists the known ones
        raise ConfigError(str(exc)) from exc
    return EXIT_OK


# -------------------------------------------------------------- generate

def cmd_generate(args: argparse.Namespace, cfg: dict[str, str]) -> int:
    with open(args.ports, encoding="utf-8", newline="") as f:
        port_index = load_wpi(f)
    anomalies = []
    if args.inject:
        anomalies = [a.strip() for a in args.inject.split(",") if a.strip()]
    fleet = generate_fleet(
        seed=args.seed,
        n_ships=args.ships,
        ports=port_index,
        hub_id=args.hub,
        anomalies=anomalies,
        emit_nmea=(args.format == "nmea"),
        total_readings=args.readings,
    )
    os.makedirs(args.out, exist_ok=True)

    def path(name: str) -> str:
        return os.path.join(args.out, name)

    if args.format == "nmea":
        with open(path("fleet.nmea"), "w", encoding="utf-8") as f:
            write_fleet_nmea(f, fleet)
    else:
        with open(path("readings.csv"), "w", encoding="utf-8", newline="") as f:
            write_fleet_csv(f, fleet)
        with open(path("vessels.csv"), "w", encoding="utf-8", newline="") as f:
            write_fleet_vessels_csv(f, fleet)
    with open(path("routes.csv"), "w", encoding="utf-8") as f:
        write_routes_csv(f, fleet)
    with open(path("manifest.json"), "w", encoding="utf-8") as f:
        write_manifest_json(f, fleet, args.seed)
    hub = args.hub or sorted(p.port_id for p in port_index.ports)[0]
    with open(path("scenario.cfg"), "w", encoding="utf-8") as f:
        write_scenario_cfg(f, fleet, port_index, hub)
    log.info(
        "generated %d ships, %d readings, %d nmea lines",
        len(fleet.plans), len(fleet.readings), len(fleet.nmea_lines),
    )
    return EXIT_OK


# ----------------------------------------------------------------- stats

def cmd_stats(args: argparse.Namespace, cfg: dict[str, str]) -> int:
    import csv as _csv

    with open(args.matrix, encoding="utf-8", newline="") as f:
        reader = _csv.DictReader(f)
        needed = {"origin_port_id", "dest_port_id", "trip_count"}
        if not needed.issubset(set(reader.fieldnames or [])):
            raise ConfigError(
                f"not an OD matrix CSV (needs {sorted(needed)}): {args.matrix}"
            )
        edges = []
        for row in reader:
            edges.append(
                (row["origin_port_id"], row["dest_port_id"], int(row["trip_count"]))
            )
    ports = {e[0] for e in edges} | {e[1] for e in edges}
    total = sum(e[2] for e in edges)
    ranked = sorted(edges, key=lambda t: (-t[2], t[0], t[1]))
    sys.stdout.write(f"ports={len(ports)}\n")
    sys.stdout.write(f"edges={len(edges)}\n")
    sys.stdout.write(f"trips={total}\n")
    for origin, dest, trips in ranked[: args.top]:
        sys.stdout.write(f"top_edge={origin}->{dest}:{trips}\n")
    return EXIT_OK


# ------------------------------------------------------------------ main

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shipflow",
        description="AIS traffic toolkit: decode, clean, select, and build "
                    "port-to-port origin-destination matrices.",
    )
    parser.add_argument("--config", default=None, help="key=value config file")
    parser.add_argument("--threads", type=int, default=1,
                        help="per-ship parallelism cap (1 = serial; output "
                             "is identical at any setting)")
    parser.add_argument("--verbose", action="store_true")
    # the same globals are accepted after the subcommand; SUPPRESS keeps the
    # subparser from clobbering values parsed at the root
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--config", default=argparse.SUPPRESS)
    shared.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    shared.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decode", parents=[shared], help="decode NMEA lines into a readings CSV")
    p.add_argument("input", help="NMEA text file, one sentence per line")
    p.add_argument("-o", "--output", default=None, help="readings CSV (default stdout)")
    p.add_argument("--vessels-out", default=None, help="static observations CSV")
    p.add_argument("--stats-out", default=None, help="decode counters (key=value)")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("ingest", parents=[shared], help="normalize readings CSVs (sort, dedupe, merge)")
    p.add_argument("inputs", nargs="+")
    p.add_argument("-o", "--output", default=None)
    _add_column_flags(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("clean", parents=[shared], help="run the four filter rules over a readings CSV")
    p.add_argument("inputs", nargs="+")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--vessels", default=None, help="static observations CSV")
    p.add_argument("--report", default=None, help="filter report path (default stderr)")
    p.add_argument("--report-format", choices=("kv", "csv"), default="kv")
    _add_filter_flags(p)
    _add_column_flags(p)
    p.set_defaults(func=cmd_clean)

    p = sub.add_parser("select", parents=[shared], help="find ships near a point, slow, in a window")
    p.add_argument("inputs", nargs="+")
    p.add_argument("-o", "--output", default=None, help="MMSI list (default stdout)")
    p.add_argument("--extract-to", default=None,
                   help="also write the selected ships' low-speed readings CSV")
    _add_query_flags(p)
    _add_column_flags(p)
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("od", parents=[shared], help="end-to-end pipeline to an OD matrix")
    p.add_argument("inputs", nargs="+", help="readings CSV(s) or NMEA file(s)")
    p.add_argument("--input-format", choices=("auto", "csv", "nmea"), default="auto")
    p.add_argument("--ports", default=None, help="World Port Index style CSV")
    p.add_argument("--vessels", default=None)
    p.add_argument("--out-dir", default=".")
    p.add_argument("--format", choices=("csv", "grid"), default="csv")
    p.add_argument("--grid-value", choices=("trips", "ships"), default="trips")
    p.add_argument("--snap-km", type=float, default=None,
                   help=f"port snapping cap (default {DEFAULT_SNAP_KM:g})")
    p.add_argument("--max-dwell-gap", type=float, default=None,
                   help="hours of silence that split one port call into two")
    p.add_argument("--skip-clean", action="store_true")
    p.add_argument("--report-format", choices=("kv", "csv"), default="kv")
    p.add_argument("--top", type=int, default=10)
    p.add_argument("--calls-out", default=None, help="per-ship port call CSV")
    _add_query_flags(p)
    _add_filter_flags(p)
    _add_column_flags(p)
    p.set_defaults(func=cmd_od)

    p = sub.add_parser("tracks", parents=[shared], help="export per-vessel paths (GeoJSON or CSV)")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--mmsi", required=True, help="comma-separated MMSI list")
    p.add_argument("--out", dest="output", default=None)
    p.add_argument("--format", choices=("geojson", "csv"), default="geojson")
    p.add_argument("--gap-hours", type=float, default=None)
    p.add_argument("--vessels", default=None)
    _add_column_flags(p)
    p.set_defaults(func=cmd_tracks)

    p = sub.add_parser("generate", parents=[shared], help="synthetic fleet with ground truth")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--ships", type=int, required=True)
    p.add_argument("--ports", required=True, help="port fixture CSV")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--format", choices=("nmea", "csv"), default="nmea")
    p.add_argument("--hub", default=None, help="hub port id (default: first by id)")
    p.add_argument("--inject", default=None,
                   help=f"comma list of anomalies: {', '.join(KNOWN_ANOMALIES)}")
    p.add_argument("--readings", type=int, default=None,
                   help="total reading budget (csv format, scale testing)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("stats", parents=[shared], help="summarize an OD matrix CSV")
    p.add_argument("--matrix", required=True)
    p.add_argument("--top", type=int, default=10)
    p.set_defaults(func=cmd_stats)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
    )
    cfg: dict[str, str] = {}
    try:
        if args.config:
            cfg = load_config(args.config)
        return args.func(args, cfg)
    except ConfigError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG
    except OSError as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
