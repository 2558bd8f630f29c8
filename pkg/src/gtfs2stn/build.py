"""Compile a Feed into the time-expanded network.

Nodes are (stop, time) events taken from the selected schedule; links come
in three families: waiting chains along one stop's timeline, transit hops
between consecutive stop_times of a trip, and walking hops to the earliest
boardable event at a nearby stop.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterator, Optional

import numpy as np

from .errors import EmptySelection
from .gtfs.service import trips_for_services
from .gtfs.types import Feed
from .spatial import SpatialIndex, walk_pairs

log = logging.getLogger(__name__)

DEFAULT_MAX_WALK_M = 402.3  # 0.25 mile buffer
DEFAULT_WALK_SPEED_MPS = 1.34
DEFAULT_DAY_HORIZON_S = 172800


class LinkKind(IntEnum):
    WAITING = 0
    TRANSIT = 1
    WALKING = 2


@dataclass(frozen=True)
class BuildConfig:
    service_ids: frozenset[str]
    max_walk_m: float = DEFAULT_MAX_WALK_M
    walk_speed_mps: float = DEFAULT_WALK_SPEED_MPS
    day_horizon_s: int = DEFAULT_DAY_HORIZON_S

    def __post_init__(self):
        if self.max_walk_m <= 0:
            raise ValueError("max_walk_m must be > 0")
        if self.walk_speed_mps <= 0:
            raise ValueError("walk_speed_mps must be > 0")
        if self.day_horizon_s <= 0:
            raise ValueError("day_horizon_s must be > 0")


@dataclass(frozen=True, slots=True)
class EventNode:
    node_id: int
    stop_index: int
    time_s: int


@dataclass(frozen=True, slots=True)
class Link:
    link_id: int
    from_node: int
    to_node: int
    kind: LinkKind
    duration_s: int
    trip_id: Optional[str]


@dataclass
class SpatioTemporalNetwork:
    """Immutable compiled network in compressed sparse form.

    Nodes are sorted by (stop_index, time_s) so one stop's events form a
    contiguous, time-ascending slice. Links are sorted by origin node, which
    makes the forward adjacency the identity ordering; the reverse adjacency
    is its exact transpose.
    """

    stop_ids: list[str]
    stop_lat: np.ndarray
    stop_lon: np.ndarray
    node_stop: np.ndarray
    node_time: np.ndarray
    stop_node_ptr: np.ndarray
    link_from: np.ndarray
    link_to: np.ndarray
    link_kind: np.ndarray
    link_dur: np.ndarray
    link_trip: np.ndarray
    trip_ids: list[str]
    max_walk_m: float
    walk_speed_mps: float
    day_horizon_s: int
    service_ids: tuple[str, ...]
    fwd_ptr: np.ndarray = field(default=None, repr=False)
    rev_ptr: np.ndarray = field(default=None, repr=False)
    rev_links: np.ndarray = field(default=None, repr=False)
    _stop_index: dict[str, int] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        n, m = len(self.node_stop), len(self.link_from)
        if self.fwd_ptr is None:
            self.fwd_ptr = _counts_to_ptr(self.link_from, n)
        if self.rev_ptr is None or self.rev_links is None:
            self.rev_ptr = _counts_to_ptr(self.link_to, n)
            self.rev_links = np.lexsort((np.arange(m), self.link_to)).astype(np.int32)
        if self._stop_index is None:
            self._stop_index = {sid: i for i, sid in enumerate(self.stop_ids)}

    # -- shape ------------------------------------------------------------

    @property
    def n_stops(self) -> int:
        return len(self.stop_ids)

    @property
    def n_nodes(self) -> int:
        return len(self.node_stop)

    @property
    def n_links(self) -> int:
        return len(self.link_from)

    def stop_index(self, stop_id: str) -> int | None:
        return self._stop_index.get(stop_id)

    def node(self, node_id: int) -> EventNode:
        return EventNode(node_id, int(self.node_stop[node_id]), int(self.node_time[node_id]))

    def link(self, link_id: int) -> Link:
        trip = int(self.link_trip[link_id])
        return Link(
            link_id,
            int(self.link_from[link_id]),
            int(self.link_to[link_id]),
            LinkKind(int(self.link_kind[link_id])),
            int(self.link_dur[link_id]),
            self.trip_ids[trip] if trip >= 0 else None,
        )

    def links(self) -> Iterator[Link]:
        return (self.link(i) for i in range(self.n_links))

    def nodes_of_stop(self, stop_index: int) -> range:
        return range(int(self.stop_node_ptr[stop_index]), int(self.stop_node_ptr[stop_index + 1]))

    def first_node_at_or_after(self, stop_index: int, time_s: int) -> int:
        """Node id of the earliest event at the stop with time >= time_s, or -1."""
        lo, hi = int(self.stop_node_ptr[stop_index]), int(self.stop_node_ptr[stop_index + 1])
        i = lo + int(np.searchsorted(self.node_time[lo:hi], time_s, side="left"))
        return i if i < hi else -1

    def last_node_at_or_before(self, stop_index: int, time_s: int) -> int:
        """Node id of the latest event at the stop with time <= time_s, or -1."""
        lo, hi = int(self.stop_node_ptr[stop_index]), int(self.stop_node_ptr[stop_index + 1])
        i = lo + int(np.searchsorted(self.node_time[lo:hi], time_s, side="right")) - 1
        return i if i >= lo else -1

    def centroid(self) -> tuple[float, float]:
        if self.n_stops == 0:
            return (0.0, 0.0)
        return (float(self.stop_lat.mean()), float(self.stop_lon.mean()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpatioTemporalNetwork):
            return NotImplemented
        return (
            self.stop_ids == other.stop_ids
            and self.trip_ids == other.trip_ids
            and self.max_walk_m == other.max_walk_m
            and self.walk_speed_mps == other.walk_speed_mps
            and self.day_horizon_s == other.day_horizon_s
            and self.service_ids == other.service_ids
            and all(
                np.array_equal(getattr(self, f), getattr(other, f))
                for f in ("stop_lat", "stop_lon", "node_stop", "node_time", "link_from", "link_to", "link_kind", "link_dur", "link_trip")
            )
        )


def _counts_to_ptr(values: np.ndarray, n: int) -> np.ndarray:
    ptr = np.zeros(n + 1, dtype=np.int64)
    if len(values):
        np.cumsum(np.bincount(values, minlength=n), out=ptr[1:])
    return ptr


def walk_seconds(distance_m: float, walk_speed_mps: float) -> int:
    """Whole-second walking time; rounded up so links never run backwards in time."""
    return int(math.ceil(distance_m / walk_speed_mps))


def build_network(feed: Feed, cfg: BuildConfig) -> SpatioTemporalNetwork:
    """Compile the selected services of a feed into a spatiotemporal network.

    Output is deterministic for identical inputs: nodes are sorted by
    (stop, time) and links by (from, to, kind, trip).
    """
    selected = trips_for_services(feed, set(cfg.service_ids)) if cfg.service_ids else []
    if not selected:
        raise EmptySelection("no trips operate on the selected services")
    selected_set = set(selected)

    stop_ids = [s.stop_id for s in feed.stops]
    stop_idx = {sid: i for i, sid in enumerate(stop_ids)}
    stop_lat = np.array([s.lat for s in feed.stops], dtype=np.float64)
    stop_lon = np.array([s.lon for s in feed.stops], dtype=np.float64)

    trip_ids = sorted(selected_set)
    trip_idx = {tid: i for i, tid in enumerate(trip_ids)}

    # Event nodes: every (stop, arrival) and (stop, departure) of the selection.
    node_key_set: set[tuple[int, int]] = set()
    transit_spec: list[tuple[int, int, int, int, int]] = []  # from_stop, from_t, to_stop, to_t, trip
    by_trip = feed.stop_times_by_trip()
    dropped_backwards = 0
    for tid in selected:
        sts = by_trip.get(tid, [])
        ti = trip_idx[tid]
        prev = None
        for st in sts:
            s = stop_idx[st.stop_id]
            node_key_set.add((s, st.arrival_s))
            node_key_set.add((s, st.departure_s))
            if prev is not None:
                if st.arrival_s < prev.departure_s:
                    dropped_backwards += 1
                else:
                    transit_spec.append((stop_idx[prev.stop_id], prev.departure_s, s, st.arrival_s, ti))
            prev = st
    if dropped_backwards:
        log.warning("dropped %d transit hops running backwards in time", dropped_backwards)

    node_keys = sorted(node_key_set)
    node_id = {key: i for i, key in enumerate(node_keys)}
    n = len(node_keys)
    node_stop = np.fromiter((k[0] for k in node_keys), dtype=np.int32, count=n)
    node_time = np.fromiter((k[1] for k in node_keys), dtype=np.int32, count=n)
    stop_node_ptr = _counts_to_ptr(node_stop, len(stop_ids))

    frm: list[np.ndarray] = []
    to: list[np.ndarray] = []
    kind: list[np.ndarray] = []
    trip: list[np.ndarray] = []

    def add_links(f: np.ndarray, t: np.ndarray, k: int, tr: np.ndarray | None = None) -> None:
        frm.append(f.astype(np.int32))
        to.append(t.astype(np.int32))
        kind.append(np.full(len(f), k, dtype=np.uint8))
        trip.append(tr.astype(np.int32) if tr is not None else np.full(len(f), -1, dtype=np.int32))

    # Transit links between consecutive stop_times of each trip.
    if transit_spec:
        add_links(
            np.fromiter((node_id[(a, ta)] for a, ta, _, _, _ in transit_spec), dtype=np.int64, count=len(transit_spec)),
            np.fromiter((node_id[(b, tb)] for _, _, b, tb, _ in transit_spec), dtype=np.int64, count=len(transit_spec)),
            LinkKind.TRANSIT,
            np.fromiter((ti for _, _, _, _, ti in transit_spec), dtype=np.int64, count=len(transit_spec)),
        )

    # Waiting chain: consecutive events of the same stop.
    if n > 1:
        same_stop = node_stop[:-1] == node_stop[1:]
        wait_from = np.nonzero(same_stop)[0]
        add_links(wait_from, wait_from + 1, LinkKind.WAITING)

    # Walking links: one per source event, to the earliest boardable event nearby.
    index = SpatialIndex.for_radius(stop_lat, stop_lon, cfg.max_walk_m)
    for a, b, dist in walk_pairs(stop_lat, stop_lon, index, cfg.max_walk_m):
        wt = walk_seconds(dist, cfg.walk_speed_mps)
        for sa, sb in ((a, b), (b, a)):
            lo_a, hi_a = int(stop_node_ptr[sa]), int(stop_node_ptr[sa + 1])
            lo_b, hi_b = int(stop_node_ptr[sb]), int(stop_node_ptr[sb + 1])
            if lo_a == hi_a or lo_b == hi_b:
                continue
            times_b = node_time[lo_b:hi_b]
            pos = np.searchsorted(times_b, node_time[lo_a:hi_a] + wt, side="left")
            ok = pos < (hi_b - lo_b)
            targets = lo_b + pos[ok]
            ok2 = node_time[targets] <= cfg.day_horizon_s
            add_links(np.arange(lo_a, hi_a)[ok][ok2], targets[ok2], LinkKind.WALKING)

    if frm:
        link_from = np.concatenate(frm)
        link_to = np.concatenate(to)
        link_kind = np.concatenate(kind)
        link_trip = np.concatenate(trip)
    else:
        link_from = np.empty(0, dtype=np.int32)
        link_to = np.empty(0, dtype=np.int32)
        link_kind = np.empty(0, dtype=np.uint8)
        link_trip = np.empty(0, dtype=np.int32)

    order = np.lexsort((link_trip, link_kind, link_to, link_from))
    link_from = link_from[order]
    link_to = link_to[order]
    link_kind = link_kind[order]
    link_trip = link_trip[order]
    link_dur = (node_time[link_to] - node_time[link_from]).astype(np.int32)

    net = SpatioTemporalNetwork(
        stop_ids=stop_ids,
        stop_lat=stop_lat,
        stop_lon=stop_lon,
        node_stop=node_stop,
        node_time=node_time,
        stop_node_ptr=stop_node_ptr,
        link_from=link_from,
        link_to=link_to,
        link_kind=link_kind,
        link_dur=link_dur,
        link_trip=link_trip,
        trip_ids=trip_ids,
        max_walk_m=cfg.max_walk_m,
        walk_speed_mps=cfg.walk_speed_mps,
        day_horizon_s=cfg.day_horizon_s,
        service_ids=tuple(sorted(cfg.service_ids)),
    )
    log.info(
        "built network: %d stops, %d nodes, %d links (%d transit / %d waiting / %d walking)",
        net.n_stops,
        net.n_nodes,
        net.n_links,
        int((link_kind == LinkKind.TRANSIT).sum()),
        int((link_kind == LinkKind.WAITING).sum()),
        int((link_kind == LinkKind.WALKING).sum()),
    )
    return net
