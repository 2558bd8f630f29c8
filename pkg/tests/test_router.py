"""Earliest-arrival / latest-departure labels against independent oracles."""

import pytest

from gtfs2stn import Coord, HyperNode, LinkKind, StopRef, earliest_arrival, latest_departure, reconstruct_path
from gtfs2stn.errors import NoSuchStop, OriginIsolated, Unreached
from gtfs2stn.search import UNREACHED, flood

from oracles import dp_labels, enumerate_paths_best

H = 3600
ANCHORS = [5 * H + k * 4200 for k in range(16)]  # 05:00 .. 22:30


def ea(net, endpoint, t, limit=None):
    return earliest_arrival(net, HyperNode.origin((endpoint,), t), limit_s=limit)


def ld(net, endpoint, t, limit=None):
    return latest_departure(net, HyperNode.destination((endpoint,), t), limit_s=limit)


# -- worked fixture examples ---------------------------------------------------


def test_labels_match_timetable(wkdy_net):
    labels = ea(wkdy_net, StopRef("A1"), 7 * H)
    got = dict(labels.items())
    assert got == {
        "A1": 25200,
        "A2": 25500,
        "A3": 25920,
        "B1": 26400,
        "B2": 26820,
        "B3": 27360,
    }


def test_anchor_after_last_departure(wkdy_net):
    labels = ea(wkdy_net, StopRef("A1"), 18 * H)
    assert dict(labels.items()) == {"A1": 18 * H}
    assert labels.travel_time(labels.stop_index("A1")) == 0


def test_origin_seed_wait_classified(wkdy_net):
    labels = ea(wkdy_net, StopRef("A1"), 7 * H - 300)
    assert labels.time_for("A2") == 25500  # still rides the 07:00 trip


def test_transfer_label_matches_enumeration(wkdy_net):
    hyper = HyperNode.origin((StopRef("A1"),), 7 * H)
    oracle = enumerate_paths_best(wkdy_net, hyper)
    labels = ea(wkdy_net, StopRef("A1"), 7 * H)
    assert labels.time_for("B3") == oracle["B3"][0] == 27360


def test_coord_origin_seeds_by_walking(wkdy_net):
    # ~50 m east of A1
    origin = Coord(lat=36.1600, lon=-86.77945)
    labels = ea(wkdy_net, origin, 7 * H - 120)
    hyper = HyperNode.origin((origin,), 7 * H - 120)
    assert dict(labels.items()) == dp_labels(wkdy_net, hyper)
    # the walk to A1 happens before the anchor'd bus leaves
    assert labels.time_for("A2") == 25500


def test_coord_origin_isolated(wkdy_net):
    with pytest.raises(OriginIsolated):
        ea(wkdy_net, Coord(lat=40.0, lon=-80.0), 7 * H)


def test_no_such_stop(wkdy_net):
    with pytest.raises(NoSuchStop):
        ea(wkdy_net, StopRef("ZZ"), 7 * H)


def test_multi_origin_is_min_over_origins(wkdy_net):
    merged = earliest_arrival(wkdy_net, HyperNode.origin((StopRef("A1"), StopRef("B1")), 7 * H))
    a = dict(ea(wkdy_net, StopRef("A1"), 7 * H).items())
    b = dict(ea(wkdy_net, StopRef("B1"), 7 * H).items())
    expect = {}
    for stop in set(a) | set(b):
        expect[stop] = min(x for x in (a.get(stop), b.get(stop)) if x is not None)
    assert dict(merged.items()) == expect


# -- oracle equivalence over the anchor grid ------------------------------------


@pytest.mark.parametrize("origin", ["A1", "A2", "A3", "B1", "B2", "B3", "C1"])
def test_dp_oracle_equivalence(wkdy_net, origin):
    for t in ANCHORS:
        hyper = HyperNode.origin((StopRef(origin),), t)
        assert dict(earliest_arrival(wkdy_net, hyper).items()) == dp_labels(wkdy_net, hyper), (origin, t)


@pytest.mark.parametrize("dest", ["A1", "A3", "B1", "B3"])
def test_reverse_dp_oracle_equivalence(wkdy_net, dest):
    for t in ANCHORS:
        hyper = HyperNode.destination((StopRef(dest),), t)
        assert dict(latest_departure(wkdy_net, hyper).items()) == dp_labels(wkdy_net, hyper), (dest, t)


# -- reverse queries -------------------------------------------------------------


def test_latest_departure_on_single_trip(golden_net):
    labels = ld(golden_net, StopRef("G3"), 30000)  # deadline = final arrival
    assert dict(labels.items()) == {"G1": 28860, "G2": 29460, "G3": 30000}


def test_deadline_before_first_arrival(golden_net):
    labels = ld(golden_net, StopRef("G3"), 7 * H)
    assert dict(labels.items()) == {"G3": 7 * H}


def test_duality(wkdy_net):
    """earliest_arrival(A@t)[B] = t' implies latest_departure(B@t')[A] >= t."""
    stops = ["A1", "A2", "A3", "B1", "B2", "B3"]
    for t in ANCHORS:
        for a in stops:
            fwd = ea(wkdy_net, StopRef(a), t)
            for b in stops:
                t_prime = fwd.time_for(b)
                if t_prime is None:
                    continue
                back = ld(wkdy_net, StopRef(b), t_prime)
                assert back.time_for(a) is not None and back.time_for(a) >= t, (a, b, t)


def test_departure_time_monotonicity(wkdy_net):
    stops = ["A1", "A2", "A3", "B1", "B2", "B3"]
    for a in stops:
        prev = {}
        for t in ANCHORS:
            got = dict(ea(wkdy_net, StopRef(a), t).items())
            for stop, label in got.items():
                if stop in prev:
                    assert label >= prev[stop]
            prev = got


def test_bellman_condition(wkdy_net):
    labels = ea(wkdy_net, StopRef("A1"), 7 * H)
    net = wkdy_net
    reached = labels.pred != UNREACHED
    for link in net.links():
        if reached[link.from_node]:
            assert reached[link.to_node], link
            stop = int(net.node_stop[link.to_node])
            assert labels.stop_label[stop] <= int(net.node_time[link.to_node])


# -- path reconstruction -----------------------------------------------------------


def test_path_to_origin_is_empty(wkdy_net):
    labels = ea(wkdy_net, StopRef("A1"), 7 * H)
    assert reconstruct_path(labels, "A1") == []


def test_unreached_target(wkdy_net):
    labels = ea(wkdy_net, StopRef("A1"), 18 * H)
    with pytest.raises(Unreached):
        reconstruct_path(labels, "B3")


def test_transfer_chain_kinds(wkdy_net):
    labels = ea(wkdy_net, StopRef("A1"), 7 * H)
    chain = reconstruct_path(labels, "B3")
    kinds = [l.kind for l in chain]
    assert kinds == [
        LinkKind.TRANSIT,
        LinkKind.WAITING,
        LinkKind.TRANSIT,
        LinkKind.WALKING,
        LinkKind.TRANSIT,
        LinkKind.WAITING,
        LinkKind.TRANSIT,
    ]
    # times are contiguous and monotone
    for a, b in zip(chain, chain[1:]):
        assert a.to_node == b.from_node
    assert int(wkdy_net.node_time[chain[-1].to_node]) == labels.time_for("B3")


def test_chain_is_contiguous_from_seed(wkdy_net):
    labels = ea(wkdy_net, StopRef("A1"), 7 * H - 300)
    chain = reconstruct_path(labels, "B2")
    assert chain[0].from_node in labels.seeds
    for a, b in zip(chain, chain[1:]):
        assert a.to_node == b.from_node


# -- the two flood kernels agree ----------------------------------------------------


def test_python_and_numba_kernels_match(wkdy_net):
    pytest.importorskip("numba")
    from gtfs2stn.router import _edges

    net = wkdy_net
    ptr, edge_link, edge_target = _edges(net, "forward")
    seeds = [net.first_node_at_or_after(0, 7 * H)]
    a = flood(ptr, edge_link, edge_target, net.node_time, seeds, net.day_horizon_s, use_numba=False)
    b = flood(ptr, edge_link, edge_target, net.node_time, seeds, net.day_horizon_s, use_numba=True)
    assert (a == b).all()


def test_reverse_path_reconstruction(golden_net):
    labels = ld(golden_net, StopRef("G3"), 30000)
    chain = reconstruct_path(labels, "G1")
    kinds = [l.kind for l in chain]
    assert kinds == [LinkKind.TRANSIT, LinkKind.WAITING, LinkKind.TRANSIT]
    # forward travel order: G1 departure up to the destination seed
    assert int(golden_net.node_time[chain[0].from_node]) == 28860
    assert int(golden_net.node_time[chain[-1].to_node]) == 30000
    for a, b in zip(chain, chain[1:]):
        assert a.to_node == b.from_node
