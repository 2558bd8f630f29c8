"""Uniform lat/lon grid hash over stops for subquadratic neighbor discovery."""

from __future__ import annotations

import math
from collections import defaultdict
from typing import Iterator, Sequence

from .geo import GeoPoint, haversine_m

# Meters per degree of latitude; longitude shrinks by cos(lat).
M_PER_DEG_LAT = math.pi / 180.0 * 6_371_000.0


class SpatialIndex:
    """Buckets stop indices by integer (lat, lon) cell.

    Radius queries return a candidate superset; callers filter by exact
    haversine distance.
    """

    def __init__(self, lats: Sequence[float], lons: Sequence[float], cell_size_deg: float):
        if cell_size_deg <= 0:
            raise ValueError("cell_size_deg must be positive")
        self.cell_size_deg = cell_size_deg
        self._lats = lats
        self._lons = lons
        self._cells: dict[tuple[int, int], list[int]] = defaultdict(list)
        for i, (lat, lon) in enumerate(zip(lats, lons)):
            self._cells[self._cell(lat, lon)].append(i)

    @classmethod
    def for_radius(cls, lats: Sequence[float], lons: Sequence[float], radius_m: float) -> "SpatialIndex":
        """Cell size sized to the query radius so a 3x3 block covers it."""
        cell_deg = max(radius_m / M_PER_DEG_LAT, 1e-6)
        return cls(lats, lons, cell_deg)

    def _cell(self, lat: float, lon: float) -> tuple[int, int]:
        return (math.floor(lat / self.cell_size_deg), math.floor(lon / self.cell_size_deg))

    def candidates(self, lat: float, lon: float, radius_m: float) -> Iterator[int]:
        """Indices of all stops in cells overlapping the radius around (lat, lon)."""
        lat_pad = radius_m / M_PER_DEG_LAT
        coslat = max(0.01, math.cos(math.radians(lat)))
        lon_pad = radius_m / (M_PER_DEG_LAT * coslat)
        r0 = math.floor((lat - lat_pad) / self.cell_size_deg)
        r1 = math.floor((lat + lat_pad) / self.cell_size_deg)
        c0 = math.floor((lon - lon_pad) / self.cell_size_deg)
        c1 = math.floor((lon + lon_pad) / self.cell_size_deg)
        for r in range(r0, r1 + 1):
            for c in range(c0, c1 + 1):
                bucket = self._cells.get((r, c))
                if bucket:
                    yield from bucket

    def within(self, point: GeoPoint, radius_m: float) -> list[tuple[int, float]]:
        """(stop_index, distance_m) for stops within radius, nearest first."""
        hits = []
        for i in self.candidates(point.lat, point.lon, radius_m):
            d = haversine_m(point, GeoPoint(self._lats[i], self._lons[i]))
            if d <= radius_m:
                hits.append((i, d))
        hits.sort(key=lambda t: (t[1], t[0]))
        return hits


def walk_pairs(
    lats: Sequence[float], lons: Sequence[float], index: SpatialIndex, max_walk_m: float
) -> list[tuple[int, int, float]]:
    """All unordered stop pairs with 0 < haversine <= max_walk_m, each once, sorted."""
    pairs: list[tuple[int, int, float]] = []
    for a in range(len(lats)):
        pa = GeoPoint(lats[a], lons[a])
        for b in index.candidates(lats[a], lons[a], max_walk_m):
            if b <= a:
                continue
            d = haversine_m(pa, GeoPoint(lats[b], lons[b]))
            if 0.0 < d <= max_walk_m:
                pairs.append((a, b, d))
    pairs.sort(key=lambda t: (t[0], t[1]))
    return pairs
