"""Grid aggregation of scheduled stop visits and diffs between two feeds.

A cell's avg_frequency is scheduled stop-visit events inside the cell
divided by (stops in the cell x window hours): how often the average stop
there is served per hour. The numerator is visit events, not a stop count;
a stop-count numerator would collapse to 1/hours for every populated cell
and carry no service information. Values are exact rationals so the
defining identity holds with zero rounding error; floats appear only in
exports.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import geojson
from .errors import GridMismatch, StopOutsideGrid, UnknownServiceId
from .gtfs.types import Feed

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GridSpec:
    min_lat: float
    min_lon: float
    cell_size_deg: float
    n_rows: int
    n_cols: int

    def __post_init__(self):
        if self.cell_size_deg <= 0:
            raise ValueError("cell_size_deg must be > 0")
        if self.n_rows <= 0 or self.n_cols <= 0:
            raise ValueError("grid must have positive dimensions")

    def cell_of(self, lat: float, lon: float) -> Optional[tuple[int, int]]:
        """Half-open cell membership; None when outside the extent."""
        row = math.floor((lat - self.min_lat) / self.cell_size_deg)
        col = math.floor((lon - self.min_lon) / self.cell_size_deg)
        if 0 <= row < self.n_rows and 0 <= col < self.n_cols:
            return (row, col)
        return None

    def cell_bounds(self, row: int, col: int) -> tuple[float, float, float, float]:
        """(min_lat, min_lon, max_lat, max_lon) of one cell."""
        lat0 = self.min_lat + row * self.cell_size_deg
        lon0 = self.min_lon + col * self.cell_size_deg
        return (lat0, lon0, lat0 + self.cell_size_deg, lon0 + self.cell_size_deg)

    @classmethod
    def covering(cls, lats, lons, cell_size_deg: float) -> "GridSpec":
        """Smallest grid of this cell size containing every point, aligned to
        global multiples of the cell size so grids over different data agree."""
        if len(lats) == 0:
            raise ValueError("cannot cover an empty point set")
        min_lat = math.floor(min(lats) / cell_size_deg) * cell_size_deg
        min_lon = math.floor(min(lons) / cell_size_deg) * cell_size_deg
        n_rows = math.floor((max(lats) - min_lat) / cell_size_deg) + 1
        n_cols = math.floor((max(lons) - min_lon) / cell_size_deg) + 1
        return cls(min_lat, min_lon, cell_size_deg, n_rows, n_cols)


@dataclass
class CellStat:
    row: int
    col: int
    stop_count: int
    visit_count: int
    avg_frequency: Fraction  # visits per stop per hour


@dataclass
class GridFrequencyMap:
    spec: GridSpec
    cells: dict[tuple[int, int], CellStat]
    window_start_s: int
    window_end_s: int
    feed_label: str = ""

    @property
    def total_visits(self) -> int:
        return sum(c.visit_count for c in self.cells.values())


@dataclass
class GridDiff:
    spec: GridSpec
    cells: dict[tuple[int, int], Fraction]  # b.avg_frequency - a.avg_frequency
    label_a: str = ""
    label_b: str = ""


def stop_visit_counts(
    feed: Feed, service_ids: set[str], window_start_s: int, window_end_s: int
) -> dict[str, int]:
    """Scheduled stop events (arrivals in [start, end)) per stop on the selected services."""
    if window_start_s >= window_end_s:
        raise ValueError("window must be non-empty")
    known = feed.service_ids()
    for sid in sorted(service_ids):
        if sid not in known:
            raise UnknownServiceId(sid)
    selected_trips = {t.trip_id for t in feed.trips if t.service_id in service_ids}
    counts: dict[str, int] = {}
    for st in feed.stop_times:
        if st.trip_id in selected_trips and window_start_s <= st.arrival_s < window_end_s:
            counts[st.stop_id] = counts.get(st.stop_id, 0) + 1
    return counts


def grid_frequency(
    feed: Feed,
    service_ids: set[str],
    spec: GridSpec,
    window_start_s: int,
    window_end_s: int,
    feed_label: str = "",
) -> GridFrequencyMap:
    """Per-cell averaged visit frequency over the window.

    Every stop must fall inside the grid extent so that total visit counts
    are conserved and refinement checks stay exact.
    """
    visits = stop_visit_counts(feed, service_ids, window_start_s, window_end_s)
    window_hours = Fraction(window_end_s - window_start_s, 3600)

    stop_cells: dict[str, tuple[int, int]] = {}
    for stop in feed.stops:
        cell = spec.cell_of(stop.lat, stop.lon)
        if cell is None:
            raise StopOutsideGrid(stop.stop_id)
        stop_cells[stop.stop_id] = cell

    per_cell_stops: dict[tuple[int, int], int] = {}
    per_cell_visits: dict[tuple[int, int], int] = {}
    for stop_id, cell in stop_cells.items():
        per_cell_stops[cell] = per_cell_stops.get(cell, 0) + 1
        per_cell_visits[cell] = per_cell_visits.get(cell, 0) + visits.get(stop_id, 0)

    cells = {
        cell: CellStat(
            row=cell[0],
            col=cell[1],
            stop_count=n_stops,
            visit_count=per_cell_visits[cell],
            avg_frequency=Fraction(per_cell_visits[cell], n_stops) / window_hours,
        )
        for cell, n_stops in per_cell_stops.items()
    }
    return GridFrequencyMap(
        spec=spec,
        cells=cells,
        window_start_s=window_start_s,
        window_end_s=window_end_s,
        feed_label=feed_label,
    )


def grid_diff(a: GridFrequencyMap, b: GridFrequencyMap) -> GridDiff:
    """Cellwise b minus a over the union of populated cells."""
    if a.spec != b.spec:
        raise GridMismatch(f"grid specs differ: {a.spec} vs {b.spec}")
    if (a.window_end_s - a.window_start_s) != (b.window_end_s - b.window_start_s):
        log.warning(
            "diffing windows of unequal duration (%ds vs %ds); frequencies are per-hour so this is comparable but note it",
            a.window_end_s - a.window_start_s,
            b.window_end_s - b.window_start_s,
        )
    cells: dict[tuple[int, int], Fraction] = {}
    for cell in set(a.cells) | set(b.cells):
        fa = a.cells[cell].avg_frequency if cell in a.cells else Fraction(0)
        fb = b.cells[cell].avg_frequency if cell in b.cells else Fraction(0)
        cells[cell] = fb - fa
    return GridDiff(spec=a.spec, cells=cells, label_a=a.feed_label, label_b=b.feed_label)


def _cell_polygon(spec: GridSpec, row: int, col: int) -> dict:
    lat0, lon0, lat1, lon1 = spec.cell_bounds(row, col)
    return geojson.polygon([[[lon0, lat0], [lon1, lat0], [lon1, lat1], [lon0, lat1], [lon0, lat0]]])


def _spec_doc(spec: GridSpec) -> dict:
    return {
        "min_lat": spec.min_lat,
        "min_lon": spec.min_lon,
        "cell_size_deg": spec.cell_size_deg,
        "n_rows": spec.n_rows,
        "n_cols": spec.n_cols,
    }


def _spec_from_doc(doc: dict) -> GridSpec:
    return GridSpec(
        min_lat=doc["min_lat"],
        min_lon=doc["min_lon"],
        cell_size_deg=doc["cell_size_deg"],
        n_rows=doc["n_rows"],
        n_cols=doc["n_cols"],
    )


def export_grid_geojson(obj: GridFrequencyMap | GridDiff) -> dict:
    """One square feature per populated cell; diffs carry a value normalized to [-1, 1]."""
    feats = []
    if isinstance(obj, GridFrequencyMap):
        max_freq = max((c.avg_frequency for c in obj.cells.values()), default=Fraction(0))
        for cell in sorted(obj.cells):
            c = obj.cells[cell]
            feats.append(
                geojson.feature(
                    _cell_polygon(obj.spec, c.row, c.col),
                    {
                        "row": c.row,
                        "col": c.col,
                        "stop_count": c.stop_count,
                        "visit_count": c.visit_count,
                        "avg_frequency": float(c.avg_frequency),
                        "normalized": float(c.avg_frequency / max_freq) if max_freq > 0 else 0.0,
                    },
                )
            )
        return geojson.feature_collection(
            feats,
            grid={
                "kind": "frequency",
                "spec": _spec_doc(obj.spec),
                "window_start_s": obj.window_start_s,
                "window_end_s": obj.window_end_s,
                "feed_label": obj.feed_label,
            },
        )

    max_abs = max((abs(v) for v in obj.cells.values()), default=Fraction(0))
    for cell in sorted(obj.cells):
        value = obj.cells[cell]
        feats.append(
            geojson.feature(
                _cell_polygon(obj.spec, cell[0], cell[1]),
                {
                    "row": cell[0],
                    "col": cell[1],
                    "diff": float(value),
                    "normalized": float(value / max_abs) if max_abs > 0 else 0.0,
                },
            )
        )
    return geojson.feature_collection(
        feats,
        grid={"kind": "diff", "spec": _spec_doc(obj.spec), "label_a": obj.label_a, "label_b": obj.label_b},
    )


def export_grid_table_bytes(obj: GridFrequencyMap | GridDiff) -> bytes:
    """Columnar export mirroring the GeoJSON properties."""
    import csv
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if isinstance(obj, GridFrequencyMap):
        max_freq = max((c.avg_frequency for c in obj.cells.values()), default=Fraction(0))
        writer.writerow(["row", "col", "stop_count", "visit_count", "avg_frequency", "normalized"])
        for cell in sorted(obj.cells):
            c = obj.cells[cell]
            norm = float(c.avg_frequency / max_freq) if max_freq > 0 else 0.0
            writer.writerow([c.row, c.col, c.stop_count, c.visit_count, float(c.avg_frequency), norm])
    else:
        max_abs = max((abs(v) for v in obj.cells.values()), default=Fraction(0))
        writer.writerow(["row", "col", "diff", "normalized"])
        for cell in sorted(obj.cells):
            value = obj.cells[cell]
            norm = float(value / max_abs) if max_abs > 0 else 0.0
            writer.writerow([cell[0], cell[1], float(value), norm])
    return buf.getvalue().encode("utf-8")


def grid_map_from_geojson(doc: dict) -> GridFrequencyMap:
    """Rebuild an exact GridFrequencyMap from its exported GeoJSON.

    Frequencies are recomputed from the integer counts and window carried in
    the document, so diffs of re-imported grids stay exact.
    """
    meta = doc.get("grid")
    if not meta or meta.get("kind") != "frequency":
        raise GridMismatch("document is not an exported grid frequency map")
    spec = _spec_from_doc(meta["spec"])
    window_start_s = meta["window_start_s"]
    window_end_s = meta["window_end_s"]
    window_hours = Fraction(window_end_s - window_start_s, 3600)
    cells: dict[tuple[int, int], CellStat] = {}
    for feat in doc.get("features", []):
        p = feat["properties"]
        cell = (p["row"], p["col"])
        cells[cell] = CellStat(
            row=p["row"],
            col=p["col"],
            stop_count=p["stop_count"],
            visit_count=p["visit_count"],
            avg_frequency=Fraction(p["visit_count"], p["stop_count"]) / window_hours,
        )
    return GridFrequencyMap(
        spec=spec,
        cells=cells,
        window_start_s=window_start_s,
        window_end_s=window_end_s,
        feed_label=meta.get("feed_label", ""),
    )
