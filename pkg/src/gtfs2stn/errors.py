"""Exception hierarchy shared across the package."""


class Gtfs2StnError(Exception):
    """Base class for all errors raised by this package."""


class MissingTable(Gtfs2StnError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"required table missing: {name}")


class MalformedRow(Gtfs2StnError):
    def __init__(self, table: str, line: int, reason: str):
        self.table = table
        self.line = line
        self.reason = reason
        super().__init__(f"{table} line {line}: {reason}")


class BadTime(Gtfs2StnError):
    def __init__(self, text: str):
        self.text = text
        super().__init__(f"not a valid GTFS time: {text!r}")


class BadDate(Gtfs2StnError):
    def __init__(self, text: str):
        self.text = text
        super().__init__(f"not a valid GTFS date: {text!r}")


class UnknownServiceId(Gtfs2StnError):
    def __init__(self, service_id: str):
        self.service_id = service_id
        super().__init__(f"service id not defined in calendar or exceptions: {service_id!r}")


class UnknownTripId(Gtfs2StnError):
    def __init__(self, trip_id: str):
        self.trip_id = trip_id
        super().__init__(f"trip id not found: {trip_id!r}")


class EmptySelection(Gtfs2StnError):
    """No trips remain after service filtering."""


class VersionMismatch(Gtfs2StnError):
    def __init__(self, found: int, expected: int):
        self.found = found
        self.expected = expected
        super().__init__(f"network stream version {found}, expected {expected}")


class CorruptStream(Gtfs2StnError):
    """Serialized network stream is truncated or inconsistent."""


class NoSuchStop(Gtfs2StnError):
    def __init__(self, stop_id: str):
        self.stop_id = stop_id
        super().__init__(f"stop id not in network: {stop_id!r}")


class OriginIsolated(Gtfs2StnError):
    """No origin endpoint produced a seed (e.g. coordinate beyond walking range of every stop)."""


class DestinationIsolated(Gtfs2StnError):
    """No destination endpoint produced a seed."""


class Unreached(Gtfs2StnError):
    def __init__(self, stop_id: str):
        self.stop_id = stop_id
        super().__init__(f"no label for stop {stop_id!r}; target was not reached")


class StopOutsideGrid(Gtfs2StnError):
    def __init__(self, stop_id: str):
        self.stop_id = stop_id
        super().__init__(f"stop {stop_id!r} falls outside the grid extent")


class GridMismatch(Gtfs2StnError):
    """Two grids with different specs cannot be diffed."""
