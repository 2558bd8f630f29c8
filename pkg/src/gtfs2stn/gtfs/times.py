"""GTFS time and date scalar parsing.

Times are kept as integer seconds since service-day midnight. GTFS allows
hours >= 24 for after-midnight service, so values above 86400 are normal.
"""

import datetime as dt
import re

from ..errors import BadDate, BadTime

_TIME_RE = re.compile(r"^(\d{1,3}):([0-5]\d):([0-5]\d)$")


def parse_gtfs_time(text: str) -> int:
    """Parse "H:MM:SS" or "HH:MM:SS" (hours may exceed 24) into seconds."""
    m = _TIME_RE.match(text.strip())
    if not m:
        raise BadTime(text)
    h, mi, s = (int(g) for g in m.groups())
    return h * 3600 + mi * 60 + s


def format_gtfs_time(seconds: int) -> str:
    """Format seconds since midnight as zero-padded HH:MM:SS."""
    if seconds < 0:
        raise BadTime(str(seconds))
    h, rem = divmod(seconds, 3600)
    mi, s = divmod(rem, 60)
    return f"{h:02d}:{mi:02d}:{s:02d}"


def parse_gtfs_date(text: str) -> dt.date:
    """Parse a YYYYMMDD calendar date."""
    t = text.strip()
    if len(t) != 8 or not t.isdigit():
        raise BadDate(text)
    try:
        return dt.date(int(t[0:4]), int(t[4:6]), int(t[6:8]))
    except ValueError:
        raise BadDate(text) from None


def format_gtfs_date(date: dt.date) -> str:
    return f"{date.year:04d}{date.month:02d}{date.day:02d}"
