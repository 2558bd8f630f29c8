"""Referential and ordering checks over a parsed Feed.

Foreign-key violations are fatal (the network builder must not see them);
ordering and range problems are warnings.
"""

from __future__ import annotations

from .types import Feed, Finding, ValidationReport

MAX_TIME_S = 2 * 86400


def validate(feed: Feed) -> ValidationReport:
    """Report every FK violation, non-monotone stop ordering, and out-of-range value."""
    report = ValidationReport(counts=feed.counts())
    add = report.errors.append

    route_ids = {r.route_id for r in feed.routes}
    stop_ids = {s.stop_id for s in feed.stops}
    trip_ids = {t.trip_id for t in feed.trips}
    service_ids = feed.service_ids()

    seen_stop_ids: set[str] = set()
    for i, stop in enumerate(feed.stops):
        if stop.stop_id in seen_stop_ids:
            add(Finding("fatal", "stops", i, f"duplicate stop_id {stop.stop_id!r}"))
        seen_stop_ids.add(stop.stop_id)
        if not (-90.0 <= stop.lat <= 90.0) or not (-180.0 <= stop.lon <= 180.0):
            add(Finding("warning", "stops", i, f"stop {stop.stop_id!r} coordinate out of range ({stop.lat}, {stop.lon})"))

    seen_trip_ids: set[str] = set()
    for i, trip in enumerate(feed.trips):
        if trip.trip_id in seen_trip_ids:
            add(Finding("fatal", "trips", i, f"duplicate trip_id {trip.trip_id!r}"))
        seen_trip_ids.add(trip.trip_id)
        if trip.route_id not in route_ids:
            add(Finding("fatal", "trips", i, f"trip {trip.trip_id!r} references unknown route {trip.route_id!r}"))
        if trip.service_id not in service_ids:
            add(Finding("fatal", "trips", i, f"trip {trip.trip_id!r} references unknown service {trip.service_id!r}"))

    prev_trip = None
    prev_seq = -1
    prev_departure = -1
    for i, st in enumerate(feed.stop_times):
        if st.trip_id not in trip_ids:
            add(Finding("fatal", "stop_times", i, f"stop_time references unknown trip {st.trip_id!r}"))
        if st.stop_id not in stop_ids:
            add(Finding("fatal", "stop_times", i, f"stop_time references unknown stop {st.stop_id!r}"))
        if st.arrival_s > st.departure_s:
            add(Finding("warning", "stop_times", i, f"trip {st.trip_id!r} seq {st.stop_sequence}: arrival after departure"))
        if not (0 <= st.arrival_s < MAX_TIME_S):
            add(Finding("warning", "stop_times", i, f"trip {st.trip_id!r} seq {st.stop_sequence}: arrival {st.arrival_s} outside [0, {MAX_TIME_S})"))
        if st.trip_id == prev_trip:
            if st.stop_sequence <= prev_seq:
                add(Finding("warning", "stop_times", i, f"trip {st.trip_id!r}: stop_sequence not strictly increasing at seq {st.stop_sequence}"))
            if st.arrival_s < prev_departure:
                add(Finding("warning", "stop_times", i, f"trip {st.trip_id!r} seq {st.stop_sequence}: arrival before previous departure (non-monotone)"))
        prev_trip, prev_seq, prev_departure = st.trip_id, st.stop_sequence, st.departure_s

    for i, cal in enumerate(feed.calendars):
        if cal.start_date > cal.end_date:
            add(Finding("warning", "calendar", i, f"service {cal.service_id!r}: start_date after end_date"))

    seen_exceptions: set[tuple[str, object]] = set()
    for i, exc in enumerate(feed.calendar_exceptions):
        key = (exc.service_id, exc.date)
        if key in seen_exceptions:
            add(Finding("warning", "calendar_dates", i, f"duplicate exception for service {exc.service_id!r} on {exc.date}"))
        seen_exceptions.add(key)

    for i, freq in enumerate(feed.frequencies):
        if freq.trip_id not in trip_ids:
            add(Finding("fatal", "frequencies", i, f"frequency references unknown trip {freq.trip_id!r}"))
        if freq.start_s >= freq.end_s:
            add(Finding("warning", "frequencies", i, f"trip {freq.trip_id!r}: start_time not before end_time"))
        if freq.headway_s <= 0:
            add(Finding("warning", "frequencies", i, f"trip {freq.trip_id!r}: non-positive headway"))

    for i, tr in enumerate(feed.transfers):
        for sid in (tr.from_stop_id, tr.to_stop_id):
            if sid not in stop_ids:
                add(Finding("fatal", "transfers", i, f"transfer references unknown stop {sid!r}"))

    return report
