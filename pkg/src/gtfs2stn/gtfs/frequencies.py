"""Expand frequency-based template trips into explicit scheduled trips."""

from __future__ import annotations

from dataclasses import replace

from ..errors import UnknownTripId
from .types import Feed, StopTime, Trip


def expand_frequencies(feed: Feed) -> Feed:
    """Clone each frequency template trip at start, start+headway, ... < end.

    Clone k is shifted so its first departure is start_s + k*headway_s; the
    template trip is removed from the expanded feed. Feeds without
    frequencies pass through unchanged, which also makes the expansion
    idempotent on its own output.
    """
    if not feed.frequencies:
        return feed

    trips_by_id = {t.trip_id: t for t in feed.trips}
    st_by_trip = feed.stop_times_by_trip()
    for freq in feed.frequencies:
        if freq.trip_id not in trips_by_id:
            raise UnknownTripId(freq.trip_id)

    template_ids = {f.trip_id for f in feed.frequencies}
    new_trips: list[Trip] = [t for t in feed.trips if t.trip_id not in template_ids]
    new_stop_times: list[StopTime] = [st for st in feed.stop_times if st.trip_id not in template_ids]

    for row_idx, freq in enumerate(feed.frequencies):
        template = trips_by_id[freq.trip_id]
        template_sts = st_by_trip.get(freq.trip_id, [])
        base_departure = template_sts[0].departure_s if template_sts else 0
        k = 0
        while freq.start_s + k * freq.headway_s < freq.end_s:
            departure = freq.start_s + k * freq.headway_s
            shift = departure - base_departure
            clone_id = f"{freq.trip_id}_f{row_idx}_{k}"
            new_trips.append(replace(template, trip_id=clone_id))
            new_stop_times.extend(
                replace(st, trip_id=clone_id, arrival_s=st.arrival_s + shift, departure_s=st.departure_s + shift)
                for st in template_sts
            )
            k += 1

    return replace(
        feed,
        trips=tuple(new_trips),
        stop_times=tuple(new_stop_times),
        frequencies=(),
    )
