"""Resolve which services and trips operate on a given date."""

from __future__ import annotations

import datetime as dt

from ..errors import UnknownServiceId
from .types import ExceptionKind, Feed


def active_service_ids(feed: Feed, date: dt.date) -> set[str]:
    """Services running on `date`: calendar row covers it (weekday bit set, no
    removed exception), or an added exception exists."""
    removed = set()
    added = set()
    for exc in feed.calendar_exceptions:
        if exc.date == date:
            (added if exc.kind is ExceptionKind.ADDED else removed).add(exc.service_id)

    active = set(added)
    weekday = date.weekday()  # Monday == 0, matching the mask order
    for cal in feed.calendars:
        if cal.service_id in removed:
            continue
        if cal.start_date <= date <= cal.end_date and cal.weekday_mask[weekday]:
            active.add(cal.service_id)
    return active


def trips_for_services(feed: Feed, services: set[str]) -> list[str]:
    """Trip ids whose service is selected, in feed order."""
    known = feed.service_ids()
    for sid in sorted(services):
        if sid not in known:
            raise UnknownServiceId(sid)
    return [t.trip_id for t in feed.trips if t.service_id in services]
