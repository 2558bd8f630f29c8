"""Read a GTFS feed from a zip archive or a directory of .txt tables."""

from __future__ import annotations

import csv
import io
import logging
import zipfile
from pathlib import Path
from typing import Iterator

from ..errors import MalformedRow, MissingTable
from .times import parse_gtfs_date, parse_gtfs_time
from .types import (
    Agency,
    CalendarException,
    ExceptionKind,
    Feed,
    Frequency,
    Route,
    ServiceCalendar,
    ShapePoint,
    Stop,
    StopTime,
    Transfer,
    Trip,
)

log = logging.getLogger(__name__)

REQUIRED_TABLES = ("agency", "stops", "routes", "trips", "stop_times")
OPTIONAL_TABLES = ("calendar", "calendar_dates", "frequencies", "transfers", "shapes")


class _TableSource:
    """Uniform access to the .txt members of a zip or directory."""

    def __init__(self, source: Path):
        if not source.exists():
            raise MissingTable(str(source))
        self._zip = None
        self._dir = None
        if source.is_dir():
            self._dir = source
        else:
            try:
                self._zip = zipfile.ZipFile(source)
            except zipfile.BadZipFile as exc:
                raise MalformedRow(str(source), 0, f"not a zip archive: {exc}") from exc
            # Feeds are sometimes zipped with a single top-level folder.
            self._prefix = ""
            names = self._zip.namelist()
            if names and not any("/" not in n for n in names if n.endswith(".txt")):
                first = names[0].split("/", 1)[0]
                if all(n.startswith(first + "/") for n in names):
                    self._prefix = first + "/"

    def open(self, table: str) -> io.TextIOBase | None:
        name = table + ".txt"
        if self._dir is not None:
            path = self._dir / name
            if not path.exists():
                return None
            return open(path, encoding="utf-8-sig", newline="")
        try:
            raw = self._zip.read(self._prefix + name)
        except KeyError:
            return None
        return io.TextIOWrapper(io.BytesIO(raw), encoding="utf-8-sig", newline="")

    def close(self) -> None:
        if self._zip is not None:
            self._zip.close()


def _rows(source: _TableSource, table: str, required_cols: tuple[str, ...]) -> Iterator[tuple[int, dict[str, str]]]:
    """Yield (line_number, row_dict) for one table; unknown columns pass through and are ignored."""
    fh = source.open(table)
    if fh is None:
        return
    with fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise MalformedRow(table, 1, "empty table: no header row")
        header = [h.strip() for h in reader.fieldnames]
        reader.fieldnames = header
        for col in required_cols:
            if col not in header:
                raise MalformedRow(table, 1, f"missing required column {col!r}")
        for i, row in enumerate(reader, start=2):
            yield i, {k: (v.strip() if isinstance(v, str) else "") for k, v in row.items() if k is not None}


def _float_field(table: str, line: int, row: dict, col: str) -> float:
    try:
        return float(row[col])
    except (ValueError, KeyError) as exc:
        raise MalformedRow(table, line, f"bad numeric value in {col!r}: {row.get(col)!r}") from exc


def _int_field(table: str, line: int, row: dict, col: str, default: int | None = None) -> int:
    value = row.get(col, "")
    if value == "" and default is not None:
        return default
    try:
        return int(value)
    except ValueError as exc:
        raise MalformedRow(table, line, f"bad integer value in {col!r}: {value!r}") from exc


def load_feed(source: str | Path) -> Feed:
    """Parse a GTFS zip archive or directory into a Feed.

    Required tables: agency, stops, routes, trips, stop_times, and at least
    one of calendar/calendar_dates. Unknown columns are ignored.
    """
    src = _TableSource(Path(source))
    try:
        def has(table: str) -> bool:
            fh = src.open(table)
            if fh is None:
                return False
            fh.close()
            return True

        for t in REQUIRED_TABLES:
            if not has(t):
                raise MissingTable(t)
        if not has("calendar") and not has("calendar_dates"):
            raise MissingTable("calendar")

        agencies = tuple(
            Agency(
                agency_id=row.get("agency_id", ""),
                name=row.get("agency_name", ""),
                url=row.get("agency_url", ""),
                timezone=row.get("agency_timezone", ""),
            )
            for _, row in _rows(src, "agency", ("agency_name",))
        )

        stops = tuple(
            Stop(
                stop_id=row["stop_id"],
                name=row.get("stop_name", ""),
                lat=_float_field("stops", line, row, "stop_lat"),
                lon=_float_field("stops", line, row, "stop_lon"),
            )
            for line, row in _rows(src, "stops", ("stop_id", "stop_lat", "stop_lon"))
        )

        routes = tuple(
            Route(
                route_id=row["route_id"],
                short_name=row.get("route_short_name", ""),
                long_name=row.get("route_long_name", ""),
                route_type=_int_field("routes", line, row, "route_type", default=3),
            )
            for line, row in _rows(src, "routes", ("route_id",))
        )

        trips = tuple(
            Trip(
                trip_id=row["trip_id"],
                route_id=row["route_id"],
                service_id=row["service_id"],
                shape_id=row.get("shape_id") or None,
            )
            for _, row in _rows(src, "trips", ("trip_id", "route_id", "service_id"))
        )

        stop_times = _load_stop_times(src)

        calendars = tuple(
            ServiceCalendar(
                service_id=row["service_id"],
                weekday_mask=tuple(
                    _int_field("calendar", line, row, day) == 1
                    for day in ("monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday")
                ),
                start_date=parse_gtfs_date(row["start_date"]),
                end_date=parse_gtfs_date(row["end_date"]),
            )
            for line, row in _rows(
                src,
                "calendar",
                ("service_id", "monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday", "start_date", "end_date"),
            )
        )

        exceptions = []
        for line, row in _rows(src, "calendar_dates", ("service_id", "date", "exception_type")):
            etype = _int_field("calendar_dates", line, row, "exception_type")
            if etype not in (1, 2):
                raise MalformedRow("calendar_dates", line, f"exception_type must be 1 or 2, got {etype}")
            exceptions.append(
                CalendarException(
                    service_id=row["service_id"],
                    date=parse_gtfs_date(row["date"]),
                    kind=ExceptionKind.ADDED if etype == 1 else ExceptionKind.REMOVED,
                )
            )

        frequencies = tuple(
            Frequency(
                trip_id=row["trip_id"],
                start_s=parse_gtfs_time(row["start_time"]),
                end_s=parse_gtfs_time(row["end_time"]),
                headway_s=_int_field("frequencies", line, row, "headway_secs"),
                exact_times=_int_field("frequencies", line, row, "exact_times", default=0) == 1,
            )
            for line, row in _rows(src, "frequencies", ("trip_id", "start_time", "end_time", "headway_secs"))
        )

        transfers = tuple(
            Transfer(
                from_stop_id=row["from_stop_id"],
                to_stop_id=row["to_stop_id"],
                min_transfer_s=_int_field("transfers", line, row, "min_transfer_time", default=0),
            )
            for line, row in _rows(src, "transfers", ("from_stop_id", "to_stop_id"))
        )

        shapes = tuple(
            ShapePoint(
                shape_id=row["shape_id"],
                lat=_float_field("shapes", line, row, "shape_pt_lat"),
                lon=_float_field("shapes", line, row, "shape_pt_lon"),
                sequence=_int_field("shapes", line, row, "shape_pt_sequence"),
            )
            for line, row in _rows(src, "shapes", ("shape_id", "shape_pt_lat", "shape_pt_lon", "shape_pt_sequence"))
        )

        return Feed(
            agencies=agencies,
            stops=stops,
            routes=routes,
            trips=trips,
            stop_times=stop_times,
            calendars=calendars,
            calendar_exceptions=tuple(exceptions),
            frequencies=frequencies,
            transfers=transfers,
            shapes=shapes,
        )
    finally:
        src.close()


def _load_stop_times(src: _TableSource) -> tuple[StopTime, ...]:
    """Parse stop_times grouped by trip and sorted by stop_sequence.

    Duplicate (trip_id, stop_sequence) rows keep the first occurrence and log
    a warning; messy real-world feeds should not abort the whole load.
    """
    by_trip: dict[str, dict[int, StopTime]] = {}
    trip_order: list[str] = []
    for line, row in _rows(src, "stop_times", ("trip_id", "stop_id", "stop_sequence", "arrival_time", "departure_time")):
        seq = _int_field("stop_times", line, row, "stop_sequence")
        if seq < 0:
            raise MalformedRow("stop_times", line, f"negative stop_sequence {seq}")
        arrival = row["arrival_time"]
        departure = row["departure_time"]
        st = StopTime(
            trip_id=row["trip_id"],
            stop_id=row["stop_id"],
            stop_sequence=seq,
            arrival_s=parse_gtfs_time(arrival) if arrival else parse_gtfs_time(departure),
            departure_s=parse_gtfs_time(departure) if departure else parse_gtfs_time(arrival),
        )
        if st.trip_id not in by_trip:
            by_trip[st.trip_id] = {}
            trip_order.append(st.trip_id)
        if seq in by_trip[st.trip_id]:
            log.warning("stop_times line %d: duplicate (trip %s, seq %d); keeping first", line, st.trip_id, seq)
            continue
        by_trip[st.trip_id][seq] = st

    out: list[StopTime] = []
    for trip_id in trip_order:
        out.extend(st for _, st in sorted(by_trip[trip_id].items()))
    return tuple(out)
