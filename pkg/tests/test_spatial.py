"""Spatial grid index and walking-pair discovery."""

from gtfs2stn import GeoPoint, SpatialIndex, walk_pairs

import feedgen
from oracles import brute_force_pairs


def test_two_stops_within_buffer():
    lats, lons = [36.0, 36.0009], [-86.0, -86.0]  # ~100 m apart
    index = SpatialIndex.for_radius(lats, lons, 402.0)
    pairs = walk_pairs(lats, lons, index, 402.0)
    assert [(a, b) for a, b, _ in pairs] == [(0, 1)]
    assert abs(pairs[0][2] - 100.0) < 1.0


def test_two_stops_beyond_buffer():
    lats, lons = [36.0, 36.0045], [-86.0, -86.0]  # ~500 m apart
    index = SpatialIndex.for_radius(lats, lons, 402.0)
    assert walk_pairs(lats, lons, index, 402.0) == []


def test_grid_matches_quadratic_scan():
    lats, lons = feedgen.stop_grid(n_side=5)  # 25 stops ~200 m apart
    index = SpatialIndex.for_radius(lats, lons, 402.3)
    pairs = {(a, b) for a, b, _ in walk_pairs(lats, lons, index, 402.3)}
    assert pairs == brute_force_pairs(lats, lons, 402.3)


def test_candidates_are_a_superset():
    lats, lons = feedgen.stop_grid(n_side=5)
    index = SpatialIndex.for_radius(lats, lons, 250.0)
    got = index.within(GeoPoint(lats[12], lons[12]), 250.0)
    got_ids = {i for i, _ in got}
    expected = {i for (a, b) in brute_force_pairs(lats, lons, 250.0) for i in (a, b) if a == 12 or b == 12}
    expected.add(12)  # within() includes the zero-distance stop itself
    assert got_ids == expected


def test_within_sorted_by_distance():
    lats, lons = feedgen.stop_grid(n_side=3)
    index = SpatialIndex.for_radius(lats, lons, 1000.0)
    hits = index.within(GeoPoint(lats[0], lons[0]), 1000.0)
    dists = [d for _, d in hits]
    assert dists == sorted(dists)


def test_no_self_pairs_for_coincident_stops():
    lats, lons = [36.0, 36.0], [-86.0, -86.0]
    index = SpatialIndex.for_radius(lats, lons, 402.0)
    assert walk_pairs(lats, lons, index, 402.0) == []
