"""Write a Feed back out as GTFS text tables (directory or zip)."""

from __future__ import annotations

import csv
import io
import zipfile
from pathlib import Path

from .times import format_gtfs_date, format_gtfs_time
from .types import ExceptionKind, Feed


def feed_tables(feed: Feed) -> dict[str, tuple[list[str], list[list]]]:
    tables: dict[str, tuple[list[str], list[list]]] = {
        "agency": (
            ["agency_id", "agency_name", "agency_url", "agency_timezone"],
            [[a.agency_id, a.name, a.url, a.timezone] for a in feed.agencies],
        ),
        "stops": (
            ["stop_id", "stop_name", "stop_lat", "stop_lon"],
            [[s.stop_id, s.name, repr(s.lat), repr(s.lon)] for s in feed.stops],
        ),
        "routes": (
            ["route_id", "route_short_name", "route_long_name", "route_type"],
            [[r.route_id, r.short_name, r.long_name, r.route_type] for r in feed.routes],
        ),
        "trips": (
            ["trip_id", "route_id", "service_id", "shape_id"],
            [[t.trip_id, t.route_id, t.service_id, t.shape_id or ""] for t in feed.trips],
        ),
        "stop_times": (
            ["trip_id", "arrival_time", "departure_time", "stop_id", "stop_sequence"],
            [
                [st.trip_id, format_gtfs_time(st.arrival_s), format_gtfs_time(st.departure_s), st.stop_id, st.stop_sequence]
                for st in feed.stop_times
            ],
        ),
    }
    if feed.calendars:
        tables["calendar"] = (
            ["service_id", "monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday", "start_date", "end_date"],
            [
                [c.service_id, *[int(b) for b in c.weekday_mask], format_gtfs_date(c.start_date), format_gtfs_date(c.end_date)]
                for c in feed.calendars
            ],
        )
    if feed.calendar_exceptions:
        tables["calendar_dates"] = (
            ["service_id", "date", "exception_type"],
            [
                [e.service_id, format_gtfs_date(e.date), 1 if e.kind is ExceptionKind.ADDED else 2]
                for e in feed.calendar_exceptions
            ],
        )
    if feed.frequencies:
        tables["frequencies"] = (
            ["trip_id", "start_time", "end_time", "headway_secs", "exact_times"],
            [
                [f.trip_id, format_gtfs_time(f.start_s), format_gtfs_time(f.end_s), f.headway_s, int(f.exact_times)]
                for f in feed.frequencies
            ],
        )
    if feed.transfers:
        tables["transfers"] = (
            ["from_stop_id", "to_stop_id", "transfer_type", "min_transfer_time"],
            [[t.from_stop_id, t.to_stop_id, 2, t.min_transfer_s] for t in feed.transfers],
        )
    if feed.shapes:
        tables["shapes"] = (
            ["shape_id", "shape_pt_lat", "shape_pt_lon", "shape_pt_sequence"],
            [[p.shape_id, repr(p.lat), repr(p.lon), p.sequence] for p in feed.shapes],
        )
    return tables


def _render(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def write_feed(feed: Feed, dest: str | Path) -> None:
    """Write GTFS tables; a .zip suffix produces an archive, anything else a directory."""
    dest = Path(dest)
    tables = feed_tables(feed)
    if dest.suffix == ".zip":
        with zipfile.ZipFile(dest, "w", zipfile.ZIP_DEFLATED) as zf:
            for name, (header, rows) in tables.items():
                zf.writestr(name + ".txt", _render(header, rows))
    else:
        dest.mkdir(parents=True, exist_ok=True)
        for name, (header, rows) in tables.items():
            (dest / (name + ".txt")).write_text(_render(header, rows), encoding="utf-8")
