"""Reachable-area computation: per-stop travel times plus banded walk polygons."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Optional, Sequence

from shapely.geometry import Point
from shapely.geometry.base import BaseGeometry
from shapely.ops import unary_union

from . import geojson
from .build import SpatioTemporalNetwork
from .geo import GeoPoint, LocalProjection
from .router import HyperNode, StopRef, earliest_arrival, latest_departure

DEFAULT_BAND_THRESHOLDS_S = (1200, 2400, 3600, 4800, 6000, 7200)  # 20..120 min
CIRCLE_QUAD_SEGS = 8  # 32-gon circles


@dataclass
class IsochroneResult:
    direction: str
    anchor_s: int
    cutoff_s: int
    origins: tuple
    stop_times: list[tuple[str, int]]  # (stop_id, travel_time_s), by stop table order
    bands: list[tuple[int, BaseGeometry]]  # (threshold_s, union polygon in local meters)
    projection: LocalProjection

    def band_geojson_geometry(self, geom: BaseGeometry) -> dict:
        """Convert a projected band polygon to a lon/lat MultiPolygon."""
        proj = self.projection
        if geom.is_empty:
            return geojson.multipolygon([])
        polys = list(geom.geoms) if geom.geom_type == "MultiPolygon" else [geom]
        out = []
        for poly in polys:
            rings = [list(poly.exterior.coords)] + [list(r.coords) for r in poly.interiors]
            out.append([[list(proj.to_lonlat(x, y)) for x, y in ring] for ring in rings])
        return geojson.multipolygon(out)


def _endpoint_echo(ep) -> dict:
    if isinstance(ep, StopRef):
        return {"stop_id": ep.stop_id}
    return {"lat": ep.lat, "lon": ep.lon}


def isochrone(
    net: SpatioTemporalNetwork,
    origins: HyperNode,
    cutoff_s: int,
    band_thresholds: Optional[Sequence[int]] = None,
) -> IsochroneResult:
    """Stops reachable within cutoff_s of the anchor, plus nested walk-out bands.

    A band polygon for threshold T is the union over reachable stops of a
    circle whose radius spends the remaining time budget walking, capped at
    the network's walking buffer.
    """
    if cutoff_s < 0:
        raise ValueError("cutoff_s must be >= 0")
    thresholds = list(band_thresholds) if band_thresholds is not None else [t for t in DEFAULT_BAND_THRESHOLDS_S if t <= cutoff_s]
    if sorted(thresholds) != thresholds:
        raise ValueError("band thresholds must be ascending")
    if thresholds and thresholds[-1] > cutoff_s:
        raise ValueError("band thresholds must not exceed the cutoff")

    anchor = origins.anchor_time_s
    if origins.kind == "origin":
        labels = earliest_arrival(net, origins, limit_s=anchor + cutoff_s)
    else:
        labels = latest_departure(net, origins, limit_s=anchor - cutoff_s)

    stop_times: list[tuple[str, int]] = []
    reach: list[tuple[int, int]] = []  # (stop_index, travel_time)
    for stop_index in sorted(labels.stop_label):
        tt = labels.travel_time(stop_index)
        if tt is not None and tt <= cutoff_s:
            stop_times.append((net.stop_ids[stop_index], tt))
            reach.append((stop_index, tt))

    lat0, lon0 = net.centroid()
    proj = LocalProjection(GeoPoint(lat0, lon0))
    bands: list[tuple[int, BaseGeometry]] = []
    for t in thresholds:
        circles = []
        for stop_index, tt in reach:
            if tt > t:
                continue
            radius = min(net.max_walk_m, (t - tt) * net.walk_speed_mps)
            if radius <= 0:
                continue
            x, y = proj.to_xy(float(net.stop_lat[stop_index]), float(net.stop_lon[stop_index]))
            circles.append(Point(x, y).buffer(radius, quad_segs=CIRCLE_QUAD_SEGS))
        bands.append((t, unary_union(circles) if circles else Point(0, 0).buffer(0)))

    return IsochroneResult(
        direction=labels.direction,
        anchor_s=anchor,
        cutoff_s=cutoff_s,
        origins=tuple(origins.endpoints),
        stop_times=stop_times,
        bands=bands,
        projection=proj,
    )


def isochrone_geojson(result: IsochroneResult, net: SpatioTemporalNetwork) -> dict:
    """GeoJSON document: band MultiPolygons (ascending threshold) then stop points."""
    feats = []
    for threshold, geom in result.bands:
        feats.append(
            geojson.feature(
                result.band_geojson_geometry(geom),
                {"kind": "band", "threshold_s": threshold, "threshold_min": threshold // 60},
            )
        )
    stop_pos = {sid: i for i, sid in enumerate(net.stop_ids)}
    for stop_id, tt in result.stop_times:
        i = stop_pos[stop_id]
        feats.append(
            geojson.feature(
                geojson.point(float(net.stop_lon[i]), float(net.stop_lat[i])),
                {"kind": "stop", "stop_id": stop_id, "travel_time_s": tt},
            )
        )
    return geojson.feature_collection(
        feats,
        query={
            "direction": result.direction,
            "anchor_s": result.anchor_s,
            "cutoff_s": result.cutoff_s,
            "origins": [_endpoint_echo(ep) for ep in result.origins],
            "bands": [t for t, _ in result.bands],
        },
    )


def isochrone_geojson_bytes(result: IsochroneResult, net: SpatioTemporalNetwork) -> bytes:
    return geojson.dump_bytes(isochrone_geojson(result, net))


def isochrone_table_bytes(result: IsochroneResult) -> bytes:
    """Columnar export: stop_id, travel_time_s."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["stop_id", "travel_time_s"])
    writer.writerows(result.stop_times)
    return buf.getvalue().encode("utf-8")
