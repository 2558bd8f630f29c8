"""Command-line workflows: validate, build, isochrone, profile, grid, serve."""

from __future__ import annotations

import json
import re
import sys
from pathlib import Path

import click

from . import geojson as gj
from .analysis import GridSpec, export_grid_geojson, grid_diff, grid_frequency, grid_map_from_geojson
from .build import BuildConfig, build_network
from .errors import Gtfs2StnError, MissingTable
from .gtfs import expand_frequencies, load_feed, validate
from .gtfs.times import parse_gtfs_time
from .isochrone import isochrone, isochrone_geojson_bytes, isochrone_table_bytes
from .netio import deserialize_network, links_geojson, nodes_geojson, serialize_network
from .profile import journey_profile, profile_table_bytes
from .router import Coord, HyperNode, StopRef

_COORD_RE = re.compile(r"^(-?\d+(?:\.\d+)?),\s*(-?\d+(?:\.\d+)?)$")


def _endpoint(text: str):
    m = _COORD_RE.match(text.strip())
    if m:
        return Coord(lat=float(m.group(1)), lon=float(m.group(2)))
    return StopRef(stop_id=text.strip())


def _time(text: str) -> int:
    t = text.strip()
    if t.isdigit():
        return int(t)
    if t.count(":") == 1:
        t += ":00"
    return parse_gtfs_time(t)


def _window(text: str) -> tuple[int, int]:
    try:
        a, b = text.split("-")
    except ValueError:
        raise click.BadParameter(f"window must look like 06:00-22:00, got {text!r}")
    return _time(a), _time(b)


def _duration(text: str) -> int:
    t = text.strip().lower()
    factor = 1
    if t.endswith(("s", "m", "h")):
        factor = {"s": 1, "m": 60, "h": 3600}[t[-1]]
        t = t[:-1]
    return int(t) * factor


def _load_network(path: str):
    return deserialize_network(Path(path).read_bytes())


@click.group()
def main():
    """Compile GTFS feeds into spatiotemporal networks and query them."""


@main.command("validate")
@click.argument("feed_path", type=click.Path(exists=True))
def validate_cmd(feed_path: str):
    """Check a feed; exit 0 when clean, 1 on fatal findings, 2 when unloadable."""
    try:
        feed = load_feed(feed_path)
    except MissingTable as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    except Gtfs2StnError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    report = validate(feed)
    for table, count in report.counts.items():
        click.echo(f"{table}: {count}")
    if report.errors:
        click.echo(report.to_text(), nl=False)
    click.echo(f"findings: {len(report.errors)} ({'fatal' if report.has_fatal else 'no fatal'})")
    sys.exit(1 if report.has_fatal else 0)


@main.command("build")
@click.argument("feed_path", type=click.Path(exists=True))
@click.option("--services", required=True, help="Comma-separated service ids to include.")
@click.option("--max-walk", type=float, default=402.3, show_default=True, help="Walking buffer in meters.")
@click.option("--walk-speed", type=float, default=1.34, show_default=True, help="Walking speed in m/s.")
@click.option("--horizon", type=int, default=172800, show_default=True, help="Latest walk target time in seconds.")
@click.option("-o", "--output", required=True, type=click.Path())
def build_cmd(feed_path: str, services: str, max_walk: float, walk_speed: float, horizon: int, output: str):
    """Compile a feed into a serialized spatiotemporal network."""
    try:
        cfg = BuildConfig(
            service_ids=frozenset(s.strip() for s in services.split(",") if s.strip()),
            max_walk_m=max_walk,
            walk_speed_mps=walk_speed,
            day_horizon_s=horizon,
        )
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    try:
        feed = load_feed(feed_path)
        report = validate(feed)
        if report.has_fatal:
            click.echo(report.to_text(), err=True, nl=False)
            click.echo("error: feed has fatal validation findings; refusing to build", err=True)
            sys.exit(1)
        net = build_network(expand_frequencies(feed), cfg)
    except Gtfs2StnError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    Path(output).write_bytes(serialize_network(net))
    click.echo(f"stops: {net.n_stops}")
    click.echo(f"nodes: {net.n_nodes}")
    click.echo(f"links: {net.n_links}")


@main.command("isochrone")
@click.argument("net_path", type=click.Path(exists=True))
@click.option("--from", "from_", multiple=True, required=True, help="stop_id or lat,lon; repeatable.")
@click.option("--depart", required=True, help="Anchor time HH:MM:SS (arrival deadline with --reverse).")
@click.option("--cutoff", type=int, required=True, help="Maximum journey time in minutes.")
@click.option("--reverse", is_flag=True, help="Latest-departure query toward the given points.")
@click.option("--bands", default=None, help="Comma-separated band thresholds in minutes.")
@click.option("-o", "--output", required=True, type=click.Path())
@click.option("--table", "table_out", type=click.Path(), default=None, help="Also write stop_id,travel_time_s CSV here.")
def isochrone_cmd(net_path, from_, depart, cutoff, reverse, bands, output, table_out):
    """Write an isochrone GeoJSON for one or more origins (or destinations)."""
    try:
        net = _load_network(net_path)
        endpoints = tuple(_endpoint(f) for f in from_)
        anchor = _time(depart)
        hyper = HyperNode.destination(endpoints, anchor) if reverse else HyperNode.origin(endpoints, anchor)
        thresholds = [int(b) * 60 for b in bands.split(",")] if bands else None
        result = isochrone(net, hyper, cutoff_s=cutoff * 60, band_thresholds=thresholds)
    except (Gtfs2StnError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    Path(output).write_bytes(isochrone_geojson_bytes(result, net))
    if table_out:
        Path(table_out).write_bytes(isochrone_table_bytes(result))
    click.echo(f"stops reached: {len(result.stop_times)}")


@main.command("profile")
@click.argument("net_path", type=click.Path(exists=True))
@click.option("--from", "from_", required=True, help="Origin stop_id or lat,lon.")
@click.option("--to", "to_", required=True, help="Destination stop_id or lat,lon.")
@click.option("--window", required=True, help="Departure window, e.g. 06:00-22:00.")
@click.option("--step", default="10m", show_default=True, help="Sample spacing, e.g. 10m or 600.")
@click.option("-o", "--output", required=True, type=click.Path())
def profile_cmd(net_path, from_, to_, window, step, output):
    """Write a journey-time table (walk/wait/vehicle decomposition per departure)."""
    try:
        net = _load_network(net_path)
        start, end = _window(window)
        prof = journey_profile(net, _endpoint(from_), _endpoint(to_), start, end, _duration(step))
    except (Gtfs2StnError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    Path(output).write_bytes(profile_table_bytes(prof))
    reachable = sum(1 for s in prof.samples if s.reachable)
    click.echo(f"samples: {len(prof.samples)} ({reachable} reachable)")


@main.command("grid")
@click.argument("feed_path", type=click.Path(exists=True))
@click.option("--services", required=True, help="Comma-separated service ids.")
@click.option("--cell", type=float, required=True, help="Cell size in degrees.")
@click.option("--window", required=True, help="Counting window, e.g. 07:00-09:00.")
@click.option("--extent", default=None, help="min_lat,min_lon,max_lat,max_lon grid extent override.")
@click.option("--label", default="", help="Feed label embedded in the output.")
@click.option("-o", "--output", required=True, type=click.Path())
def grid_cmd(feed_path, services, cell, window, extent, label, output):
    """Write a per-cell averaged stop-visit frequency GeoJSON."""
    try:
        feed = expand_frequencies(load_feed(feed_path))
        start, end = _window(window)
        service_ids = {s.strip() for s in services.split(",") if s.strip()}
        if extent:
            lo_lat, lo_lon, hi_lat, hi_lon = (float(x) for x in extent.split(","))
            spec = GridSpec.covering([lo_lat, hi_lat], [lo_lon, hi_lon], cell)
        else:
            spec = GridSpec.covering([s.lat for s in feed.stops], [s.lon for s in feed.stops], cell)
        gmap = grid_frequency(feed, service_ids, spec, start, end, feed_label=label or Path(feed_path).name)
    except (Gtfs2StnError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    Path(output).write_bytes(gj.dump_bytes(export_grid_geojson(gmap)))
    click.echo(f"populated cells: {len(gmap.cells)}")


@main.command("grid-diff")
@click.argument("a_path", type=click.Path(exists=True))
@click.argument("b_path", type=click.Path(exists=True))
@click.option("-o", "--output", required=True, type=click.Path())
def grid_diff_cmd(a_path, b_path, output):
    """Diff two exported grids (b minus a) into a diverging-scale GeoJSON."""
    try:
        a = grid_map_from_geojson(json.loads(Path(a_path).read_text(encoding="utf-8")))
        b = grid_map_from_geojson(json.loads(Path(b_path).read_text(encoding="utf-8")))
        diff = grid_diff(a, b)
    except (Gtfs2StnError, ValueError, KeyError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    Path(output).write_bytes(gj.dump_bytes(export_grid_geojson(diff)))
    click.echo(f"cells: {len(diff.cells)}")


@main.command("net-geojson")
@click.argument("net_path", type=click.Path(exists=True))
@click.option("--nodes", "nodes_out", type=click.Path(), default=None, help="Write the node point layer here.")
@click.option("--links", "links_out", type=click.Path(), default=None, help="Write the link line layer here.")
def net_geojson_cmd(net_path, nodes_out, links_out):
    """Export a network's node/link layers for external 3-D inspection."""
    if not nodes_out and not links_out:
        click.echo("error: provide --nodes and/or --links", err=True)
        sys.exit(2)
    net = _load_network(net_path)
    if nodes_out:
        Path(nodes_out).write_bytes(gj.dump_bytes(nodes_geojson(net)))
    if links_out:
        Path(links_out).write_bytes(gj.dump_bytes(links_geojson(net)))


@main.command("serve")
@click.option("--host", default=None, help="Bind address (defaults to GTFS2STN_HOST or 127.0.0.1).")
@click.option("--port", type=int, default=None, help="Port (defaults to GTFS2STN_PORT or 8000).")
def serve_cmd(host, port):
    """Run the HTTP service that powers the web client."""
    import os

    import uvicorn

    from .server import create_app

    uvicorn.run(
        create_app(),
        host=host or os.environ.get("GTFS2STN_HOST", "127.0.0.1"),
        port=port or int(os.environ.get("GTFS2STN_PORT", "8000")),
    )


if __name__ == "__main__":
    main()
