"""CLI surface: exit codes, outputs, and agreement with the library."""

import json

import pytest
from click.testing import CliRunner

import feedgen
from gtfs2stn import (
    HyperNode,
    StopRef,
    deserialize_network,
    isochrone,
    isochrone_geojson_bytes,
)
from gtfs2stn.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture(scope="module")
def built_net_path(tmp_path_factory):
    root = tmp_path_factory.mktemp("cli")
    feed_dir = feedgen.write_tables(feedgen.base_tables(), root / "feed")
    out = root / "net.stn"
    result = CliRunner().invoke(main, ["build", str(feed_dir), "--services", "WKDY", "-o", str(out)])
    assert result.exit_code == 0, result.output
    return out


def test_validate_clean_feed(runner, base_feed_dir):
    result = runner.invoke(main, ["validate", str(base_feed_dir)])
    assert result.exit_code == 0
    assert "stops: 9" in result.output
    assert "trips: 12" in result.output


def test_validate_missing_table_exits_2(runner, tmp_path):
    src = feedgen.write_tables(feedgen.base_tables(), tmp_path / "feed")
    (src / "stops.txt").unlink()
    result = runner.invoke(main, ["validate", str(src)])
    assert result.exit_code == 2
    assert "stops" in result.output


def test_validate_fk_violation_exits_1(runner, tmp_path):
    src = feedgen.write_tables(feedgen.base_tables(), tmp_path / "feed")
    with open(src / "stop_times.txt", "a") as fh:
        fh.write("GHOST,07:00:00,07:00:00,A1,1\n")
    result = runner.invoke(main, ["validate", str(src)])
    assert result.exit_code == 1
    assert "fatal" in result.output


def test_build_reports_counts(runner, base_feed_dir, tmp_path):
    out = tmp_path / "net.stn"
    result = runner.invoke(main, ["build", str(base_feed_dir), "--services", "WKDY", "-o", str(out)])
    assert result.exit_code == 0, result.output
    assert "nodes: 24" in result.output
    assert "links: 34" in result.output
    net = deserialize_network(out.read_bytes())
    assert net.n_nodes == 24


def test_build_unknown_service(runner, base_feed_dir, tmp_path):
    result = runner.invoke(main, ["build", str(base_feed_dir), "--services", "NOPE", "-o", str(tmp_path / "x")])
    assert result.exit_code == 1
    assert "NOPE" in result.output


def test_build_rejects_zero_walk(runner, base_feed_dir, tmp_path):
    result = runner.invoke(
        main, ["build", str(base_feed_dir), "--services", "WKDY", "--max-walk", "0", "-o", str(tmp_path / "x")]
    )
    assert result.exit_code == 2
    assert "max_walk_m" in result.output


def test_build_expands_frequencies(runner, tmp_path):
    feed_dir = feedgen.write_tables(feedgen.freq_tables(), tmp_path / "freq")
    out = tmp_path / "net.stn"
    result = runner.invoke(main, ["build", str(feed_dir), "--services", "FS", "-o", str(out)])
    assert result.exit_code == 0, result.output
    net = deserialize_network(out.read_bytes())
    # 4 clones x 2 stops, one distinct time each
    assert net.n_nodes == 8


def test_isochrone_matches_library(runner, built_net_path, tmp_path):
    out = tmp_path / "iso.geojson"
    result = runner.invoke(
        main,
        ["isochrone", str(built_net_path), "--from", "A1", "--depart", "07:00:00", "--cutoff", "40", "-o", str(out)],
    )
    assert result.exit_code == 0, result.output
    net = deserialize_network(built_net_path.read_bytes())
    expected = isochrone_geojson_bytes(isochrone(net, HyperNode.origin((StopRef("A1"),), 25200), 2400), net)
    assert out.read_bytes() == expected


def test_isochrone_cutoff_zero_only_origin(runner, built_net_path, tmp_path):
    out = tmp_path / "iso.geojson"
    result = runner.invoke(
        main,
        ["isochrone", str(built_net_path), "--from", "A1", "--depart", "07:00:00", "--cutoff", "0", "-o", str(out)],
    )
    assert result.exit_code == 0, result.output
    doc = json.loads(out.read_text())
    stops = [f for f in doc["features"] if f["properties"]["kind"] == "stop"]
    assert [f["properties"]["stop_id"] for f in stops] == ["A1"]


def test_isochrone_multi_origin_equals_min_of_singles(runner, built_net_path, tmp_path):
    multi = tmp_path / "multi.geojson"
    result = runner.invoke(
        main,
        [
            "isochrone", str(built_net_path),
            "--from", "A1", "--from", "B1", "--from", "A3",
            "--depart", "07:00:00", "--cutoff", "60", "-o", str(multi),
        ],
    )
    assert result.exit_code == 0, result.output
    best = {}
    for origin in ["A1", "B1", "A3"]:
        single = tmp_path / f"{origin}.geojson"
        runner.invoke(
            main,
            ["isochrone", str(built_net_path), "--from", origin, "--depart", "07:00:00", "--cutoff", "60", "-o", str(single)],
        )
        doc = json.loads(single.read_text())
        for f in doc["features"]:
            if f["properties"]["kind"] == "stop":
                sid, tt = f["properties"]["stop_id"], f["properties"]["travel_time_s"]
                best[sid] = min(tt, best.get(sid, 10**9))
    got = {
        f["properties"]["stop_id"]: f["properties"]["travel_time_s"]
        for f in json.loads(multi.read_text())["features"]
        if f["properties"]["kind"] == "stop"
    }
    assert got == best


def test_isochrone_bad_stop(runner, built_net_path, tmp_path):
    result = runner.invoke(
        main,
        ["isochrone", str(built_net_path), "--from", "ZZ", "--depart", "07:00:00", "--cutoff", "40", "-o", str(tmp_path / "x")],
    )
    assert result.exit_code == 1


def test_profile_output_rows_sum(runner, built_net_path, tmp_path):
    out = tmp_path / "profile.csv"
    result = runner.invoke(
        main,
        ["profile", str(built_net_path), "--from", "A1", "--to", "B3", "--window", "07:00-09:00", "--step", "30m", "-o", str(out)],
    )
    assert result.exit_code == 0, result.output
    lines = out.read_text().splitlines()
    assert lines[0] == "departure_s,total_s,walk_s,wait_s,vehicle_s,reachable"
    assert len(lines) == 1 + 5  # inclusive window, 30-minute step
    for line in lines[1:]:
        dep, total, walk, wait, veh, reach = line.split(",")
        if reach == "1":
            assert int(walk) + int(wait) + int(veh) == int(total)


def test_profile_single_sample(runner, built_net_path, tmp_path):
    out = tmp_path / "one.csv"
    result = runner.invoke(
        main,
        ["profile", str(built_net_path), "--from", "A1", "--to", "A2", "--window", "07:00-07:00", "--step", "10m", "-o", str(out)],
    )
    assert result.exit_code == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 2
    assert lines[1] == "25200,300,0,0,300,1"


def test_profile_direct_departure_no_wait(runner, built_net_path, tmp_path):
    out = tmp_path / "direct.csv"
    runner.invoke(
        main,
        ["profile", str(built_net_path), "--from", "A1", "--to", "A3", "--window", "08:00-08:00", "--step", "10m", "-o", str(out)],
    )
    dep, total, walk, wait, veh, reach = out.read_text().splitlines()[1].split(",")
    assert wait == "60"  # dwell at A2 only; no pre-boarding wait
    assert walk == "0"


def test_grid_and_self_diff(runner, tmp_path):
    feed_dir = feedgen.write_tables(feedgen.grid_tables(), tmp_path / "grid")
    a = tmp_path / "a.geojson"
    result = runner.invoke(
        main, ["grid", str(feed_dir), "--services", "GS", "--cell", "0.01", "--window", "07:00-09:00", "-o", str(a)]
    )
    assert result.exit_code == 0, result.output
    diff_out = tmp_path / "diff.geojson"
    result = runner.invoke(main, ["grid-diff", str(a), str(a), "-o", str(diff_out)])
    assert result.exit_code == 0, result.output
    doc = json.loads(diff_out.read_text())
    assert all(f["properties"]["diff"] == 0.0 for f in doc["features"])


def test_grid_diff_doubled_positive(runner, tmp_path):
    base_dir = feedgen.write_tables(feedgen.grid_tables(), tmp_path / "g1")
    doubled_dir = feedgen.write_tables(feedgen.grid_tables(double=True), tmp_path / "g2")
    a, b = tmp_path / "a.geojson", tmp_path / "b.geojson"
    for src, dst in ((base_dir, a), (doubled_dir, b)):
        result = CliRunner().invoke(
            main, ["grid", str(src), "--services", "GS", "--cell", "0.01", "--window", "07:00-09:00", "-o", str(dst)]
        )
        assert result.exit_code == 0, result.output
    out = tmp_path / "diff.geojson"
    result = CliRunner().invoke(main, ["grid-diff", str(a), str(b), "-o", str(out)])
    assert result.exit_code == 0
    doc = json.loads(out.read_text())
    assert doc["features"]
    assert all(f["properties"]["diff"] > 0 for f in doc["features"])


def test_grid_diff_mismatched_grids(runner, tmp_path):
    feed_dir = feedgen.write_tables(feedgen.grid_tables(), tmp_path / "grid")
    a, b = tmp_path / "a.geojson", tmp_path / "b.geojson"
    for cell, dst in (("0.01", a), ("0.005", b)):
        CliRunner().invoke(
            main, ["grid", str(feed_dir), "--services", "GS", "--cell", cell, "--window", "07:00-09:00", "-o", str(dst)]
        )
    result = runner.invoke(main, ["grid-diff", str(a), str(b), "-o", str(tmp_path / "x")])
    assert result.exit_code == 1
    assert "grid" in result.output.lower()


def test_net_geojson_layers(runner, built_net_path, tmp_path):
    nodes, links = tmp_path / "nodes.geojson", tmp_path / "links.geojson"
    result = runner.invoke(main, ["net-geojson", str(built_net_path), "--nodes", str(nodes), "--links", str(links)])
    assert result.exit_code == 0
    assert len(json.loads(nodes.read_text())["features"]) == 24
    assert len(json.loads(links.read_text())["features"]) == 34
