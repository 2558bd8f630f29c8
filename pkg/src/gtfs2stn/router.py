"""Time-dependent queries over a compiled network.

Forward queries answer "departing the origin at t, when do I reach each
stop"; reverse queries run the transposed graph to answer "leaving each
stop at the latest possible time, can I reach the destination by t".
Multi-point queries seed every endpoint of a hyper origin/destination.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

import numpy as np

from .build import Link, SpatioTemporalNetwork, walk_seconds
from .errors import DestinationIsolated, NoSuchStop, OriginIsolated, Unreached
from .geo import GeoPoint
from .search import SEED, UNREACHED, flood
from .spatial import SpatialIndex

FORWARD = "forward"
REVERSE = "reverse"


@dataclass(frozen=True, slots=True)
class StopRef:
    stop_id: str


@dataclass(frozen=True, slots=True)
class Coord:
    lat: float
    lon: float


QueryEndpoint = Union[StopRef, Coord]


@dataclass(frozen=True)
class HyperNode:
    """Virtual origin or destination attached to one or more endpoints."""

    kind: str  # "origin" | "destination"
    endpoints: tuple[QueryEndpoint, ...]
    anchor_time_s: int

    def __post_init__(self):
        if self.kind not in ("origin", "destination"):
            raise ValueError(f"bad hyper node kind {self.kind!r}")
        if not self.endpoints:
            raise ValueError("hyper node needs at least one endpoint")

    @classmethod
    def origin(cls, endpoints, anchor_time_s: int) -> "HyperNode":
        return cls("origin", tuple(endpoints), anchor_time_s)

    @classmethod
    def destination(cls, endpoints, anchor_time_s: int) -> "HyperNode":
        return cls("destination", tuple(endpoints), anchor_time_s)


@dataclass(frozen=True, slots=True)
class SeedInfo:
    """How a graph node was entered from outside the network."""

    node_id: int
    walk_s: int  # access walk from a coordinate endpoint (0 for stop endpoints)
    wait_s: int  # residual wait between arriving at the stop and the node's time


@dataclass
class ArrivalLabels:
    """Per-stop earliest arrivals (forward) or latest departures (reverse)."""

    direction: str
    anchor_s: int
    net: SpatioTemporalNetwork
    stop_label: dict[int, int]
    stop_source: dict[int, int]  # stop_index -> node id, or -1 when the label is a direct seed
    direct_walk: dict[int, int]  # stop_index -> access walk seconds for direct-seed labels
    pred: np.ndarray = field(repr=False)
    seeds: dict[int, SeedInfo] = field(repr=False)

    def stop_index(self, stop_id: str) -> int:
        idx = self.net.stop_index(stop_id)
        if idx is None:
            raise NoSuchStop(stop_id)
        return idx

    def time_for(self, stop_id: str) -> Optional[int]:
        return self.stop_label.get(self.stop_index(stop_id))

    def travel_time(self, stop_index: int) -> Optional[int]:
        label = self.stop_label.get(stop_index)
        if label is None:
            return None
        return label - self.anchor_s if self.direction == FORWARD else self.anchor_s - label

    def items(self) -> Iterator[tuple[str, int]]:
        for idx in sorted(self.stop_label):
            yield self.net.stop_ids[idx], self.stop_label[idx]


def _network_spatial_index(net: SpatioTemporalNetwork) -> SpatialIndex:
    cached = getattr(net, "_spatial_index", None)
    if cached is None:
        cached = SpatialIndex.for_radius(net.stop_lat, net.stop_lon, max(net.max_walk_m, 1.0))
        net._spatial_index = cached
    return cached


def _edges(net: SpatioTemporalNetwork, direction: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """CSR (ptr, edge_link, edge_target) for the requested direction, cached on the net."""
    attr = "_edges_fwd" if direction == FORWARD else "_edges_rev"
    cached = getattr(net, attr, None)
    if cached is None:
        if direction == FORWARD:
            cached = (
                net.fwd_ptr.astype(np.int64),
                np.arange(net.n_links, dtype=np.int64),
                net.link_to.astype(np.int64),
            )
        else:
            rev = net.rev_links.astype(np.int64)
            cached = (net.rev_ptr.astype(np.int64), rev, net.link_from.astype(np.int64)[rev])
        setattr(net, attr, cached)
    return cached


def _resolve_seeds(
    net: SpatioTemporalNetwork, hyper: HyperNode
) -> tuple[dict[int, SeedInfo], dict[int, int], dict[int, int]]:
    """Seed nodes plus direct per-stop labels for a hyper origin/destination.

    Returns (seeds by node id, direct stop labels, direct stop access-walk).
    Direct labels cover presence at a stop independent of any event node:
    the anchor itself for stop endpoints, anchor +/- walk for coordinates.
    """
    forward = hyper.kind == "origin"
    anchor = hyper.anchor_time_s
    seeds: dict[int, SeedInfo] = {}
    direct: dict[int, int] = {}
    direct_walk: dict[int, int] = {}

    def better(new: int, old: int) -> bool:
        return new < old if forward else new > old

    def attach(stop_index: int, walk_s: int) -> None:
        label = anchor + walk_s if forward else anchor - walk_s
        if stop_index not in direct or better(label, direct[stop_index]):
            direct[stop_index] = label
            direct_walk[stop_index] = walk_s
        if forward:
            node = net.first_node_at_or_after(stop_index, label)
        else:
            node = net.last_node_at_or_before(stop_index, label)
        if node >= 0 and node not in seeds:
            wait = abs(int(net.node_time[node]) - label)
            seeds[node] = SeedInfo(node, walk_s, wait)

    for ep in hyper.endpoints:
        if isinstance(ep, StopRef):
            idx = net.stop_index(ep.stop_id)
            if idx is None:
                raise NoSuchStop(ep.stop_id)
            attach(idx, 0)
        else:
            index = _network_spatial_index(net)
            for stop_index, dist in index.within(GeoPoint(ep.lat, ep.lon), net.max_walk_m):
                attach(stop_index, walk_seconds(dist, net.walk_speed_mps))

    if not direct:
        exc = OriginIsolated if forward else DestinationIsolated
        raise exc("no endpoint is within walking range of any stop")
    return seeds, direct, direct_walk


def _run(net: SpatioTemporalNetwork, hyper: HyperNode, limit_s: Optional[int]) -> ArrivalLabels:
    forward = hyper.kind == "origin"
    direction = FORWARD if forward else REVERSE
    seeds, direct, direct_walk = _resolve_seeds(net, hyper)

    if forward:
        node_key = net.node_time
        key_limit = min(limit_s, net.day_horizon_s) if limit_s is not None else net.day_horizon_s
    else:
        # Reverse keys are negated times, so "no earlier than limit_s" becomes
        # a key ceiling; 0 admits every node.
        node_key = -net.node_time.astype(np.int64)
        key_limit = -limit_s if limit_s is not None else 0
    ptr, edge_link, edge_target = _edges(net, direction)
    seed_arr = np.fromiter(sorted(seeds), dtype=np.int64, count=len(seeds))
    pred = flood(ptr, edge_link, edge_target, node_key, seed_arr, key_limit)

    reached = np.nonzero(pred != UNREACHED)[0]
    stop_label = dict(direct)
    stop_source = {idx: -1 for idx in direct}
    if len(reached):
        stops_of_reached = net.node_stop[reached]
        # Nodes are (stop, time)-sorted, so the first reached node per stop is
        # its earliest and the last its latest.
        uniq, first_pos = np.unique(stops_of_reached, return_index=True)
        if forward:
            best_nodes = reached[first_pos]
        else:
            last_pos = np.searchsorted(stops_of_reached, uniq, side="right") - 1
            best_nodes = reached[last_pos]
        for stop_index, node in zip(uniq.tolist(), best_nodes.tolist()):
            label = int(net.node_time[node])
            old = stop_label.get(stop_index)
            if old is None or (label < old if forward else label > old):
                stop_label[stop_index] = label
                stop_source[stop_index] = node

    return ArrivalLabels(
        direction=direction,
        anchor_s=hyper.anchor_time_s,
        net=net,
        stop_label=stop_label,
        stop_source=stop_source,
        direct_walk=direct_walk,
        pred=pred,
        seeds=seeds,
    )


def earliest_arrival(net: SpatioTemporalNetwork, origin: HyperNode, limit_s: Optional[int] = None) -> ArrivalLabels:
    """Earliest arrival label per stop when departing the origin at its anchor time."""
    if origin.kind != "origin":
        raise ValueError("earliest_arrival expects an origin hyper node")
    return _run(net, origin, limit_s)


def latest_departure(net: SpatioTemporalNetwork, destination: HyperNode, limit_s: Optional[int] = None) -> ArrivalLabels:
    """Latest feasible departure per stop to reach the destination by its anchor time."""
    if destination.kind != "destination":
        raise ValueError("latest_departure expects a destination hyper node")
    return _run(net, destination, limit_s)


def reconstruct_path(labels: ArrivalLabels, target_stop_id: str) -> list[Link]:
    """Link chain from a seed to the target stop's label node, in travel order.

    Empty when the label is a direct seed (the traveler never boards
    anything, e.g. the origin stop itself).
    """
    idx = labels.stop_index(target_stop_id)
    if idx not in labels.stop_label:
        raise Unreached(target_stop_id)
    node = labels.stop_source[idx]
    if node < 0:
        return []
    net = labels.net
    chain: list[Link] = []
    while labels.pred[node] != SEED:
        link_id = int(labels.pred[node])
        link = net.link(link_id)
        chain.append(link)
        node = link.from_node if labels.direction == FORWARD else link.to_node
    if labels.direction == FORWARD:
        chain.reverse()
    return chain
