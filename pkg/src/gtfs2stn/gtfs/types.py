"""In-memory relational image of one GTFS feed.

Row types are frozen dataclasses; a Feed is immutable after load and safe
to share across threads.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional


@dataclass(frozen=True, slots=True)
class Agency:
    agency_id: str
    name: str
    url: str = ""
    timezone: str = ""


@dataclass(frozen=True, slots=True)
class Stop:
    stop_id: str
    name: str
    lat: float
    lon: float


@dataclass(frozen=True, slots=True)
class Route:
    route_id: str
    short_name: str = ""
    long_name: str = ""
    route_type: int = 3


@dataclass(frozen=True, slots=True)
class Trip:
    trip_id: str
    route_id: str
    service_id: str
    shape_id: Optional[str] = None


@dataclass(frozen=True, slots=True)
class StopTime:
    trip_id: str
    stop_id: str
    stop_sequence: int
    arrival_s: int
    departure_s: int


@dataclass(frozen=True, slots=True)
class ServiceCalendar:
    service_id: str
    # Monday..Sunday
    weekday_mask: tuple[bool, bool, bool, bool, bool, bool, bool]
    start_date: dt.date
    end_date: dt.date


class ExceptionKind(Enum):
    ADDED = "added"
    REMOVED = "removed"


@dataclass(frozen=True, slots=True)
class CalendarException:
    service_id: str
    date: dt.date
    kind: ExceptionKind


@dataclass(frozen=True, slots=True)
class Frequency:
    trip_id: str
    start_s: int
    end_s: int
    headway_s: int
    exact_times: bool = False


@dataclass(frozen=True, slots=True)
class Transfer:
    from_stop_id: str
    to_stop_id: str
    min_transfer_s: int = 0


@dataclass(frozen=True, slots=True)
class ShapePoint:
    shape_id: str
    lat: float
    lon: float
    sequence: int


@dataclass(frozen=True)
class Feed:
    """One parsed GTFS dataset. stop_times are grouped by trip in stop_sequence order."""

    agencies: tuple[Agency, ...]
    stops: tuple[Stop, ...]
    routes: tuple[Route, ...]
    trips: tuple[Trip, ...]
    stop_times: tuple[StopTime, ...]
    calendars: tuple[ServiceCalendar, ...] = ()
    calendar_exceptions: tuple[CalendarException, ...] = ()
    frequencies: tuple[Frequency, ...] = ()
    transfers: tuple[Transfer, ...] = ()
    shapes: tuple[ShapePoint, ...] = ()

    def stop_times_by_trip(self) -> dict[str, list[StopTime]]:
        """Group stop_times by trip_id, preserving stop_sequence order."""
        grouped: dict[str, list[StopTime]] = {}
        for st in self.stop_times:
            grouped.setdefault(st.trip_id, []).append(st)
        return grouped

    def service_ids(self) -> set[str]:
        """All service ids defined by calendar rows or exceptions."""
        ids = {c.service_id for c in self.calendars}
        ids.update(e.service_id for e in self.calendar_exceptions)
        return ids

    def counts(self) -> dict[str, int]:
        return {
            "agency": len(self.agencies),
            "stops": len(self.stops),
            "routes": len(self.routes),
            "trips": len(self.trips),
            "stop_times": len(self.stop_times),
            "calendar": len(self.calendars),
            "calendar_dates": len(self.calendar_exceptions),
            "frequencies": len(self.frequencies),
            "transfers": len(self.transfers),
            "shapes": len(self.shapes),
        }

    def normalized(self) -> "Feed":
        """Copy with every table sorted by its natural key, for order-insensitive comparison."""
        return replace(
            self,
            agencies=tuple(sorted(self.agencies, key=lambda a: a.agency_id)),
            stops=tuple(sorted(self.stops, key=lambda s: s.stop_id)),
            routes=tuple(sorted(self.routes, key=lambda r: r.route_id)),
            trips=tuple(sorted(self.trips, key=lambda t: t.trip_id)),
            stop_times=tuple(sorted(self.stop_times, key=lambda s: (s.trip_id, s.stop_sequence))),
            calendars=tuple(sorted(self.calendars, key=lambda c: c.service_id)),
            calendar_exceptions=tuple(
                sorted(self.calendar_exceptions, key=lambda e: (e.service_id, e.date))
            ),
            frequencies=tuple(
                sorted(self.frequencies, key=lambda f: (f.trip_id, f.start_s))
            ),
            transfers=tuple(
                sorted(self.transfers, key=lambda t: (t.from_stop_id, t.to_stop_id))
            ),
            shapes=tuple(sorted(self.shapes, key=lambda p: (p.shape_id, p.sequence))),
        )


@dataclass(frozen=True, slots=True)
class Finding:
    severity: str  # "fatal" | "warning"
    table: str
    row: int
    message: str


@dataclass
class ValidationReport:
    """Outcome of feed validation; fatal findings block network construction."""

    errors: list[Finding] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)

    @property
    def has_fatal(self) -> bool:
        return any(f.severity == "fatal" for f in self.errors)

    def to_text(self) -> str:
        """One finding per line: severity, table, row, message."""
        lines = [f"{f.severity}\t{f.table}\t{f.row}\t{f.message}" for f in self.errors]
        return "\n".join(lines) + ("\n" if lines else "")
