"""Versioned binary serialization of a network, plus GeoJSON inspection layers."""

from __future__ import annotations

import struct
from typing import BinaryIO

import numpy as np

from . import geojson
from .build import LinkKind, SpatioTemporalNetwork
from .errors import CorruptStream, VersionMismatch

MAGIC = b"GSTN"
VERSION = 1


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise CorruptStream(f"stream truncated at byte {self.pos} (wanted {n} more)")
        chunk = self.data[self.pos : self.pos + n]
        self.pos += n
        return chunk

    def u32(self) -> int:
        return struct.unpack("<I", self.take(4))[0]

    def f64(self) -> float:
        return struct.unpack("<d", self.take(8))[0]

    def array(self, dtype: str, count: int) -> np.ndarray:
        arr = np.frombuffer(self.take(count * np.dtype(dtype).itemsize), dtype=dtype)
        return arr.copy()

    def strings(self, count: int) -> list[str]:
        out = []
        for _ in range(count):
            n = self.u32()
            out.append(self.take(n).decode("utf-8"))
        return out


def _pack_strings(items: list[str] | tuple[str, ...]) -> bytes:
    parts = []
    for s in items:
        raw = s.encode("utf-8")
        parts.append(struct.pack("<I", len(raw)))
        parts.append(raw)
    return b"".join(parts)


def serialize_network(net: SpatioTemporalNetwork) -> bytes:
    """Lossless byte stream for download/reload; layout is versioned."""
    head = struct.pack(
        "<IIIII",
        net.n_stops,
        net.n_nodes,
        net.n_links,
        len(net.trip_ids),
        len(net.service_ids),
    )
    cfg = struct.pack("<ddI", net.max_walk_m, net.walk_speed_mps, net.day_horizon_s)
    parts = [
        MAGIC,
        bytes([VERSION]),
        head,
        cfg,
        _pack_strings(net.stop_ids),
        _pack_strings(net.trip_ids),
        _pack_strings(net.service_ids),
        net.stop_lat.astype("<f8").tobytes(),
        net.stop_lon.astype("<f8").tobytes(),
        net.node_stop.astype("<i4").tobytes(),
        net.node_time.astype("<i4").tobytes(),
        net.link_from.astype("<i4").tobytes(),
        net.link_to.astype("<i4").tobytes(),
        net.link_kind.astype("u1").tobytes(),
        net.link_trip.astype("<i4").tobytes(),
    ]
    return b"".join(parts)


def deserialize_network(data: bytes) -> SpatioTemporalNetwork:
    r = _Reader(data)
    if r.take(4) != MAGIC:
        raise CorruptStream("bad magic; not a serialized network")
    version = r.take(1)[0]
    if version != VERSION:
        raise VersionMismatch(version, VERSION)
    n_stops, n_nodes, n_links, n_trips, n_services = struct.unpack("<IIIII", r.take(20))
    max_walk_m, walk_speed_mps, day_horizon_s = struct.unpack("<ddI", r.take(20))

    stop_ids = r.strings(n_stops)
    trip_ids = r.strings(n_trips)
    service_ids = tuple(r.strings(n_services))
    stop_lat = r.array("<f8", n_stops)
    stop_lon = r.array("<f8", n_stops)
    node_stop = r.array("<i4", n_nodes)
    node_time = r.array("<i4", n_nodes)
    link_from = r.array("<i4", n_links)
    link_to = r.array("<i4", n_links)
    link_kind = r.array("u1", n_links)
    link_trip = r.array("<i4", n_links)
    if r.pos != len(data):
        raise CorruptStream(f"{len(data) - r.pos} trailing bytes after network payload")

    if len(node_stop) and (node_stop.min() < 0 or node_stop.max() >= n_stops):
        raise CorruptStream("node stop index out of range")
    if len(link_from) and (
        link_from.min() < 0 or link_from.max() >= n_nodes or link_to.min() < 0 or link_to.max() >= n_nodes
    ):
        raise CorruptStream("link endpoint out of range")
    if len(link_trip) and link_trip.max() >= n_trips:
        raise CorruptStream("link trip index out of range")

    ptr = np.zeros(n_stops + 1, dtype=np.int64)
    if n_nodes:
        np.cumsum(np.bincount(node_stop, minlength=n_stops), out=ptr[1:])
    return SpatioTemporalNetwork(
        stop_ids=stop_ids,
        stop_lat=stop_lat,
        stop_lon=stop_lon,
        node_stop=node_stop,
        node_time=node_time,
        stop_node_ptr=ptr,
        link_from=link_from,
        link_to=link_to,
        link_kind=link_kind,
        link_dur=(node_time[link_to] - node_time[link_from]).astype(np.int32) if n_links else np.empty(0, np.int32),
        link_trip=link_trip,
        trip_ids=trip_ids,
        max_walk_m=max_walk_m,
        walk_speed_mps=walk_speed_mps,
        day_horizon_s=int(day_horizon_s),
        service_ids=service_ids,
    )


def write_network(net: SpatioTemporalNetwork, fh: BinaryIO) -> None:
    fh.write(serialize_network(net))


def read_network(fh: BinaryIO) -> SpatioTemporalNetwork:
    return deserialize_network(fh.read())


def nodes_geojson(net: SpatioTemporalNetwork) -> dict:
    """Point layer: one feature per event node with its time."""
    feats = [
        geojson.feature(
            geojson.point(float(net.stop_lon[s]), float(net.stop_lat[s])),
            {"node_id": i, "stop_id": net.stop_ids[s], "time_s": int(net.node_time[i])},
        )
        for i, s in enumerate(net.node_stop.tolist())
    ]
    return geojson.feature_collection(feats)


def links_geojson(net: SpatioTemporalNetwork) -> dict:
    """LineString layer: one feature per link with kind/duration/trip."""
    feats = []
    for link in net.links():
        sa = int(net.node_stop[link.from_node])
        sb = int(net.node_stop[link.to_node])
        feats.append(
            geojson.feature(
                geojson.linestring(
                    [
                        [float(net.stop_lon[sa]), float(net.stop_lat[sa])],
                        [float(net.stop_lon[sb]), float(net.stop_lat[sb])],
                    ]
                ),
                {
                    "from": link.from_node,
                    "to": link.to_node,
                    "kind": LinkKind(link.kind).name.lower(),
                    "duration_s": link.duration_s,
                    "trip_id": link.trip_id,
                },
            )
        )
    return geojson.feature_collection(feats)
