"""Small GeoJSON (RFC 7946) construction helpers with deterministic byte output."""

from __future__ import annotations

import json
from typing import Any


def point(lon: float, lat: float) -> dict:
    return {"type": "Point", "coordinates": [lon, lat]}


def linestring(coords: list[list[float]]) -> dict:
    return {"type": "LineString", "coordinates": coords}


def polygon(rings: list[list[list[float]]]) -> dict:
    return {"type": "Polygon", "coordinates": rings}


def multipolygon(polys: list[list[list[list[float]]]]) -> dict:
    return {"type": "MultiPolygon", "coordinates": polys}


def feature(geometry: dict | None, properties: dict) -> dict:
    return {"type": "Feature", "geometry": geometry, "properties": properties}


def feature_collection(features: list[dict], **foreign: Any) -> dict:
    fc: dict[str, Any] = {"type": "FeatureCollection", "features": features}
    fc.update(foreign)
    return fc


def dump_bytes(obj: dict) -> bytes:
    """Compact, key-order-preserving serialization; identical input gives identical bytes."""
    return json.dumps(obj, separators=(",", ":"), allow_nan=False).encode("utf-8")
