"""GTFS feed model: parsing, validation, service resolution, frequency expansion."""

from .export import write_feed
from .frequencies import expand_frequencies
from .load import load_feed
from .service import active_service_ids, trips_for_services
from .times import format_gtfs_date, format_gtfs_time, parse_gtfs_date, parse_gtfs_time
from .types import (
    Agency,
    CalendarException,
    ExceptionKind,
    Feed,
    Finding,
    Frequency,
    Route,
    ServiceCalendar,
    ShapePoint,
    Stop,
    StopTime,
    Transfer,
    Trip,
    ValidationReport,
)
from .validate import validate

__all__ = [
    "Agency",
    "CalendarException",
    "ExceptionKind",
    "Feed",
    "Finding",
    "Frequency",
    "Route",
    "ServiceCalendar",
    "ShapePoint",
    "Stop",
    "StopTime",
    "Transfer",
    "Trip",
    "ValidationReport",
    "active_service_ids",
    "expand_frequencies",
    "format_gtfs_date",
    "format_gtfs_time",
    "load_feed",
    "parse_gtfs_date",
    "parse_gtfs_time",
    "trips_for_services",
    "validate",
    "write_feed",
]
