"""Journey-time profiles over a departure window, decomposed into walk/wait/vehicle time."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Optional

from .build import LinkKind, SpatioTemporalNetwork, walk_seconds
from .errors import NoSuchStop, OriginIsolated
from .geo import GeoPoint
from .router import (
    ArrivalLabels,
    HyperNode,
    QueryEndpoint,
    StopRef,
    _network_spatial_index,
    earliest_arrival,
    reconstruct_path,
)

WALK = "walk"
WAIT = "wait"
VEHICLE = "vehicle"

_KIND_NAME = {LinkKind.WALKING: WALK, LinkKind.WAITING: WAIT, LinkKind.TRANSIT: VEHICLE}


@dataclass(frozen=True, slots=True)
class Leg:
    kind: str
    from_stop: Optional[str]
    to_stop: Optional[str]
    start_s: int
    end_s: int
    trip_id: Optional[str] = None


@dataclass
class JourneyBreakdown:
    total_s: int
    walk_s: int
    wait_s: int
    vehicle_s: int
    legs: list[Leg]


@dataclass
class ProfileSample:
    departure_s: int
    breakdown: Optional[JourneyBreakdown]

    @property
    def reachable(self) -> bool:
        return self.breakdown is not None


@dataclass
class JourneyProfile:
    origin: QueryEndpoint
    dest: QueryEndpoint
    window_start_s: int
    window_end_s: int
    step_s: int
    samples: list[ProfileSample]


def decompose(labels: ArrivalLabels, stop_index: int, egress_walk_s: int = 0, egress_to: Optional[str] = None) -> JourneyBreakdown:
    """Split the journey to one labeled stop into walk/wait/vehicle seconds.

    The three components always sum to total_s exactly: seed offsets and link
    durations are integer node-time differences with nothing dropped.
    """
    net = labels.net
    anchor = labels.anchor_s
    label = labels.stop_label[stop_index]
    stop_id = net.stop_ids[stop_index]
    legs: list[Leg] = []

    source = labels.stop_source[stop_index]
    if source < 0:
        access_walk = labels.direct_walk[stop_index]
        if access_walk:
            legs.append(Leg(WALK, None, stop_id, anchor, anchor + access_walk))
        walk = access_walk
        wait = 0
        vehicle = 0
    else:
        chain = reconstruct_path(labels, stop_id)
        seed_node = chain[0].from_node if chain else source
        seed = labels.seeds[seed_node]
        seed_stop = net.stop_ids[int(net.node_stop[seed_node])]
        t = anchor
        if seed.walk_s:
            legs.append(Leg(WALK, None, seed_stop, t, t + seed.walk_s))
            t += seed.walk_s
        if seed.wait_s:
            legs.append(Leg(WAIT, seed_stop, seed_stop, t, t + seed.wait_s))
            t += seed.wait_s
        walk, wait, vehicle = seed.walk_s, seed.wait_s, 0
        for link in chain:
            kind = _KIND_NAME[link.kind]
            from_stop = net.stop_ids[int(net.node_stop[link.from_node])]
            to_stop = net.stop_ids[int(net.node_stop[link.to_node])]
            end = t + link.duration_s
            if kind == WALK:
                walk += link.duration_s
            elif kind == WAIT:
                wait += link.duration_s
            else:
                vehicle += link.duration_s
            prev = legs[-1] if legs else None
            if prev is not None and prev.kind == kind and prev.trip_id == link.trip_id and prev.to_stop == from_stop:
                legs[-1] = Leg(kind, prev.from_stop, to_stop, prev.start_s, end, prev.trip_id)
            else:
                legs.append(Leg(kind, from_stop, to_stop, t, end, link.trip_id))
            t = end

    if egress_walk_s:
        legs.append(Leg(WALK, stop_id, egress_to, label, label + egress_walk_s))
        walk += egress_walk_s

    total = (label - anchor) + egress_walk_s
    return JourneyBreakdown(total_s=total, walk_s=walk, wait_s=wait, vehicle_s=vehicle, legs=legs)


def _arrival_at(labels: ArrivalLabels, dest: QueryEndpoint) -> Optional[JourneyBreakdown]:
    """Best breakdown for reaching the destination endpoint, or None if unreachable."""
    net = labels.net
    if isinstance(dest, StopRef):
        idx = net.stop_index(dest.stop_id)
        if idx is None:
            raise NoSuchStop(dest.stop_id)
        if idx not in labels.stop_label:
            return None
        return decompose(labels, idx)

    best: Optional[tuple[int, int, int]] = None  # (arrival, stop_index, walk)
    for stop_index, dist in _network_spatial_index(net).within(GeoPoint(dest.lat, dest.lon), net.max_walk_m):
        label = labels.stop_label.get(stop_index)
        if label is None:
            continue
        w = walk_seconds(dist, net.walk_speed_mps)
        cand = (label + w, stop_index, w)
        if best is None or cand < best:
            best = cand
    if best is None:
        return None
    _, stop_index, w = best
    return decompose(labels, stop_index, egress_walk_s=w, egress_to=None)


def journey_profile(
    net: SpatioTemporalNetwork,
    origin: QueryEndpoint,
    dest: QueryEndpoint,
    window_start_s: int,
    window_end_s: int,
    step_s: int,
) -> JourneyProfile:
    """Sample earliest-arrival journeys at each departure time in the window (inclusive)."""
    if window_end_s < window_start_s:
        raise ValueError("window end before start")
    if step_s <= 0:
        raise ValueError("step_s must be positive")
    # Validate stop endpoints up front so a bad id fails fast.
    for ep in (origin, dest):
        if isinstance(ep, StopRef) and net.stop_index(ep.stop_id) is None:
            raise NoSuchStop(ep.stop_id)

    samples: list[ProfileSample] = []
    t = window_start_s
    while t <= window_end_s:
        try:
            labels = earliest_arrival(net, HyperNode.origin((origin,), t))
            breakdown = _arrival_at(labels, dest)
        except OriginIsolated:
            breakdown = None
        samples.append(ProfileSample(departure_s=t, breakdown=breakdown))
        t += step_s

    return JourneyProfile(
        origin=origin,
        dest=dest,
        window_start_s=window_start_s,
        window_end_s=window_end_s,
        step_s=step_s,
        samples=samples,
    )


def _endpoint_doc(ep: QueryEndpoint) -> dict:
    if isinstance(ep, StopRef):
        return {"stop_id": ep.stop_id}
    return {"lat": ep.lat, "lon": ep.lon}


def profile_document(profile: JourneyProfile) -> dict:
    """JSON-ready document with one record per sample."""
    samples = []
    for s in profile.samples:
        rec: dict = {"departure_s": s.departure_s, "reachable": s.reachable}
        if s.breakdown is not None:
            rec.update(
                total_s=s.breakdown.total_s,
                walk_s=s.breakdown.walk_s,
                wait_s=s.breakdown.wait_s,
                vehicle_s=s.breakdown.vehicle_s,
            )
        samples.append(rec)
    return {
        "origin": _endpoint_doc(profile.origin),
        "dest": _endpoint_doc(profile.dest),
        "window_start_s": profile.window_start_s,
        "window_end_s": profile.window_end_s,
        "step_s": profile.step_s,
        "samples": samples,
    }


def profile_geojson(profile: JourneyProfile, net: SpatioTemporalNetwork) -> dict:
    """Origin/destination point features with the sampled series attached."""
    from . import geojson

    def endpoint_feature(ep: QueryEndpoint, role: str):
        if isinstance(ep, StopRef):
            idx = net.stop_index(ep.stop_id)
            lon, lat = float(net.stop_lon[idx]), float(net.stop_lat[idx])
            props = {"role": role, "stop_id": ep.stop_id}
        else:
            lon, lat = ep.lon, ep.lat
            props = {"role": role}
        return geojson.feature(geojson.point(lon, lat), props)

    return geojson.feature_collection(
        [endpoint_feature(profile.origin, "origin"), endpoint_feature(profile.dest, "dest")],
        profile=profile_document(profile),
    )


def profile_table_bytes(profile: JourneyProfile) -> bytes:
    """Columnar export: departure, components, reachable flag."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["departure_s", "total_s", "walk_s", "wait_s", "vehicle_s", "reachable"])
    for s in profile.samples:
        if s.breakdown is None:
            writer.writerow([s.departure_s, "", "", "", "", 0])
        else:
            b = s.breakdown
            writer.writerow([s.departure_s, b.total_s, b.walk_s, b.wait_s, b.vehicle_s, 1])
    return buf.getvalue().encode("utf-8")
