"""HTTP service exposing the five-step workflow: upload, inspect, build, isochrone, profile.

Session state lives in memory; one mutating job (parse or build) may run
per session at a time, and queries only see fully committed results, so a
failed or abandoned job leaves the session exactly as it was.
"""

from __future__ import annotations

import logging
import os
import secrets
import tempfile
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from fastapi import FastAPI, HTTPException, Response, UploadFile
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from . import geojson as gj
from .analysis import GridSpec, export_grid_geojson, grid_diff, grid_frequency, grid_map_from_geojson
from .build import BuildConfig, SpatioTemporalNetwork, build_network
from .errors import (
    GridMismatch,
    Gtfs2StnError,
    NoSuchStop,
    StopOutsideGrid,
    UnknownServiceId,
)
from .gtfs import Feed, expand_frequencies, load_feed, validate
from .gtfs.times import parse_gtfs_time
from .gtfs.types import ValidationReport
from .isochrone import isochrone, isochrone_geojson_bytes
from .netio import serialize_network
from .profile import journey_profile, profile_document, profile_table_bytes
from .router import Coord, HyperNode, StopRef

log = logging.getLogger(__name__)

DEFAULT_SESSION_TTL_S = 3600
DEFAULT_UPLOAD_CAP = 256 * 1024 * 1024
DEFAULT_PAGE_SIZE = 100
MAX_PAGE_SIZE = 1000


@dataclass
class Job:
    job_id: str
    phase: str = "queued"  # queued | parsing | building | done | failed
    progress: float = 0.0
    message: str = ""

    def doc(self) -> dict:
        return {"job_id": self.job_id, "phase": self.phase, "progress": self.progress, "message": self.message}


@dataclass
class Session:
    session_id: str
    created_at: float
    last_access: float
    feed: Optional[Feed] = None
    feed_report: Optional[ValidationReport] = None
    feed_name: str = ""
    network: Optional[SpatioTemporalNetwork] = None
    network_bytes: Optional[bytes] = None
    build_config: Optional[BuildConfig] = None
    jobs: dict[str, Job] = field(default_factory=dict)
    active_job: Optional[str] = None


class SessionStore:
    def __init__(self, ttl_s: float):
        self.ttl_s = ttl_s
        self._lock = threading.RLock()
        self._sessions: dict[str, Session] = {}

    def create(self) -> Session:
        with self._lock:
            sid = secrets.token_hex(16)
            now = time.time()
            session = Session(session_id=sid, created_at=now, last_access=now)
            self._sessions[sid] = session
            return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(session_id)
            if session is None:
                raise HTTPException(404, "unknown session")
            if time.time() - session.last_access > self.ttl_s:
                del self._sessions[session_id]
                raise HTTPException(404, "session expired")
            session.last_access = time.time()
            return session

    def lock(self) -> threading.RLock:
        return self._lock


# -- request bodies ---------------------------------------------------------

TimeValue = Union[int, str]


def _seconds(value: TimeValue, what: str) -> int:
    if isinstance(value, int):
        return value
    try:
        return parse_gtfs_time(value)
    except Gtfs2StnError:
        raise HTTPException(422, f"bad {what} time {value!r}; use seconds or HH:MM:SS")


class EndpointBody(BaseModel):
    stop_id: Optional[str] = None
    lat: Optional[float] = None
    lon: Optional[float] = None

    def resolve(self):
        if self.stop_id is not None:
            return StopRef(self.stop_id)
        if self.lat is not None and self.lon is not None:
            return Coord(lat=self.lat, lon=self.lon)
        raise HTTPException(422, "endpoint needs stop_id or lat+lon")


class BuildBody(BaseModel):
    service_ids: list[str] = Field(min_length=1)
    max_walk_m: float = 402.3
    walk_speed_mps: float = 1.34
    day_horizon_s: int = 172800


class IsochroneBody(BaseModel):
    origins: list[EndpointBody] = Field(min_length=1)
    depart: Optional[TimeValue] = None
    arrive: Optional[TimeValue] = None
    cutoff_s: TimeValue
    bands: Optional[list[int]] = None
    direction: Optional[str] = None  # optional cross-check against depart/arrive


class ProfileBody(BaseModel):
    origin: EndpointBody
    dest: EndpointBody
    window_start: TimeValue
    window_end: TimeValue
    step_s: int = 600


class GridBody(BaseModel):
    service_ids: list[str] = Field(min_length=1)
    cell_size_deg: float
    window_start: TimeValue
    window_end: TimeValue
    extent: Optional[list[float]] = None  # min_lat, min_lon, max_lat, max_lon
    label: str = ""


class GridDiffBody(BaseModel):
    a: dict
    b: dict


# -- app --------------------------------------------------------------------


def create_app(
    session_ttl_s: Optional[float] = None,
    upload_cap: Optional[int] = None,
) -> FastAPI:
    ttl = session_ttl_s if session_ttl_s is not None else float(os.environ.get("GTFS2STN_SESSION_TTL", DEFAULT_SESSION_TTL_S))
    cap = upload_cap if upload_cap is not None else int(os.environ.get("GTFS2STN_UPLOAD_CAP", DEFAULT_UPLOAD_CAP))
    store = SessionStore(ttl)
    app = FastAPI(title="gtfs2stn", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.store = store

    def start_job(session: Session, phase: str) -> Job:
        with store.lock():
            if session.active_job is not None and session.jobs[session.active_job].phase not in ("done", "failed"):
                raise HTTPException(409, "another job is already running in this session")
            job = Job(job_id=uuid.uuid4().hex, phase=phase)
            session.jobs[job.job_id] = job
            session.active_job = job.job_id
            return job

    def require_feed(session: Session) -> Feed:
        if session.feed is None:
            raise HTTPException(409, "feed not loaded; upload one first")
        return session.feed

    def require_network(session: Session) -> SpatioTemporalNetwork:
        if session.network is None:
            raise HTTPException(409, "network not built; build it first")
        return session.network

    @app.post("/sessions", status_code=201)
    def create_session():
        return {"session_id": store.create().session_id}

    @app.get("/sessions/{sid}")
    def session_info(sid: str):
        session = store.get(sid)
        return {
            "session_id": session.session_id,
            "feed_loaded": session.feed is not None,
            "feed_name": session.feed_name,
            "network_built": session.network is not None,
        }

    @app.post("/sessions/{sid}/feed", status_code=202)
    async def upload_feed(sid: str, file: UploadFile):
        session = store.get(sid)
        data = await file.read(cap + 1)
        if len(data) > cap:
            raise HTTPException(413, f"upload exceeds cap of {cap} bytes")
        job = start_job(session, "queued")
        filename = file.filename or "feed.zip"

        def run():
            job.phase = "parsing"
            job.progress = 0.1
            tmp = None
            try:
                with tempfile.NamedTemporaryFile(suffix=".zip", delete=False) as fh:
                    fh.write(data)
                    tmp = fh.name
                feed = load_feed(tmp)
                job.progress = 0.7
                report = validate(feed)
                with store.lock():
                    session.feed = feed
                    session.feed_report = report
                    session.feed_name = filename
                    session.network = None
                    session.network_bytes = None
                    session.build_config = None
                job.progress = 1.0
                job.message = f"parsed {len(feed.stops)} stops, {len(feed.trips)} trips; {len(report.errors)} findings"
                job.phase = "done"
            except Exception as exc:  # job surface: report, never raise
                job.message = str(exc)
                job.phase = "failed"
            finally:
                if tmp:
                    Path(tmp).unlink(missing_ok=True)

        threading.Thread(target=run, daemon=True).start()
        return job.doc()

    @app.get("/sessions/{sid}/jobs/{job_id}")
    def job_status(sid: str, job_id: str):
        session = store.get(sid)
        job = session.jobs.get(job_id)
        if job is None:
            raise HTTPException(404, "unknown job")
        return job.doc()

    @app.get("/sessions/{sid}/feed/tables")
    def feed_tables(sid: str):
        session = store.get(sid)
        feed = require_feed(session)
        counts = feed.counts()
        report = session.feed_report
        return {
            "tables": [{"name": name, "rows": rows} for name, rows in counts.items() if rows > 0],
            "findings": len(report.errors) if report else 0,
            "fatal": report.has_fatal if report else False,
        }

    @app.get("/sessions/{sid}/feed/tables/{name}")
    def feed_table_page(sid: str, name: str, page: int = 0, page_size: int = DEFAULT_PAGE_SIZE):
        session = store.get(sid)
        feed = require_feed(session)
        page_size = max(1, min(page_size, MAX_PAGE_SIZE))
        rows, columns = _table_rows(feed, name)
        if rows is None:
            raise HTTPException(404, f"unknown table {name!r}")
        start = page * page_size
        return {
            "name": name,
            "page": page,
            "page_size": page_size,
            "total_rows": len(rows),
            "columns": columns,
            "rows": rows[start : start + page_size],
        }

    @app.get("/sessions/{sid}/feed/stops.geojson")
    def stops_geojson(sid: str):
        session = store.get(sid)
        feed = require_feed(session)
        feats = [
            gj.feature(gj.point(s.lon, s.lat), {"stop_id": s.stop_id, "name": s.name})
            for s in feed.stops
        ]
        return Response(gj.dump_bytes(gj.feature_collection(feats)), media_type="application/geo+json")

    @app.get("/sessions/{sid}/feed/shapes.geojson")
    def shapes_geojson(sid: str):
        session = store.get(sid)
        feed = require_feed(session)
        by_shape: dict[str, list] = {}
        for p in feed.shapes:
            by_shape.setdefault(p.shape_id, []).append(p)
        feats = []
        for shape_id in sorted(by_shape):
            pts = sorted(by_shape[shape_id], key=lambda p: p.sequence)
            feats.append(
                gj.feature(gj.linestring([[p.lon, p.lat] for p in pts]), {"shape_id": shape_id})
            )
        return Response(gj.dump_bytes(gj.feature_collection(feats)), media_type="application/geo+json")

    @app.get("/sessions/{sid}/feed/services")
    def feed_services(sid: str):
        session = store.get(sid)
        feed = require_feed(session)
        trips_per_service: dict[str, int] = {}
        for t in feed.trips:
            trips_per_service[t.service_id] = trips_per_service.get(t.service_id, 0) + 1
        return {
            "services": [
                {"service_id": sid_, "trips": trips_per_service.get(sid_, 0)}
                for sid_ in sorted(feed.service_ids())
            ]
        }

    @app.post("/sessions/{sid}/network", status_code=202)
    def build_network_endpoint(sid: str, body: BuildBody):
        session = store.get(sid)
        feed = require_feed(session)
        if session.feed_report is not None and session.feed_report.has_fatal:
            raise HTTPException(422, "feed has fatal validation findings; cannot build a network")
        try:
            cfg = BuildConfig(
                service_ids=frozenset(body.service_ids),
                max_walk_m=body.max_walk_m,
                walk_speed_mps=body.walk_speed_mps,
                day_horizon_s=body.day_horizon_s,
            )
        except ValueError as exc:
            raise HTTPException(422, str(exc))
        job = start_job(session, "queued")

        def run():
            job.phase = "building"
            job.progress = 0.1
            try:
                net = build_network(expand_frequencies(feed), cfg)
                job.progress = 0.8
                payload = serialize_network(net)
                with store.lock():
                    session.network = net
                    session.network_bytes = payload
                    session.build_config = cfg
                job.progress = 1.0
                job.message = f"{net.n_nodes} nodes, {net.n_links} links"
                job.phase = "done"
            except Exception as exc:
                job.message = str(exc)
                job.phase = "failed"

        threading.Thread(target=run, daemon=True).start()
        return job.doc()

    @app.get("/sessions/{sid}/network")
    def network_info(sid: str):
        session = store.get(sid)
        net = require_network(session)
        return {
            "stops": net.n_stops,
            "nodes": net.n_nodes,
            "links": net.n_links,
            "service_ids": list(net.service_ids),
            "max_walk_m": net.max_walk_m,
            "walk_speed_mps": net.walk_speed_mps,
            "download_url": f"/sessions/{sid}/network/download",
        }

    @app.get("/sessions/{sid}/network/download")
    def network_download(sid: str):
        session = store.get(sid)
        require_network(session)
        return Response(
            session.network_bytes,
            media_type="application/octet-stream",
            headers={"Content-Disposition": "attachment; filename=network.stn"},
        )

    @app.post("/sessions/{sid}/isochrone")
    def isochrone_endpoint(sid: str, body: IsochroneBody):
        session = store.get(sid)
        net = require_network(session)
        if (body.depart is None) == (body.arrive is None):
            raise HTTPException(422, "provide exactly one of depart or arrive")
        reverse = body.arrive is not None
        if body.direction is not None:
            wanted = "reverse" if reverse else "forward"
            if body.direction != wanted:
                raise HTTPException(422, f"direction {body.direction!r} contradicts {'arrive' if reverse else 'depart'}")
        anchor = _seconds(body.arrive if reverse else body.depart, "anchor")
        cutoff = _seconds(body.cutoff_s, "cutoff")
        endpoints = tuple(e.resolve() for e in body.origins)
        hyper = HyperNode.destination(endpoints, anchor) if reverse else HyperNode.origin(endpoints, anchor)
        try:
            result = isochrone(net, hyper, cutoff_s=cutoff, band_thresholds=body.bands)
        except NoSuchStop as exc:
            raise HTTPException(404, str(exc))
        except (Gtfs2StnError, ValueError) as exc:
            raise HTTPException(422, str(exc))
        return Response(isochrone_geojson_bytes(result, net), media_type="application/geo+json")

    @app.post("/sessions/{sid}/profile")
    def profile_endpoint(sid: str, body: ProfileBody, format: str = "json"):
        session = store.get(sid)
        net = require_network(session)
        try:
            prof = journey_profile(
                net,
                body.origin.resolve(),
                body.dest.resolve(),
                _seconds(body.window_start, "window start"),
                _seconds(body.window_end, "window end"),
                body.step_s,
            )
        except NoSuchStop as exc:
            raise HTTPException(404, str(exc))
        except (Gtfs2StnError, ValueError) as exc:
            raise HTTPException(422, str(exc))
        if format == "csv":
            return Response(profile_table_bytes(prof), media_type="text/csv")
        return profile_document(prof)

    @app.post("/sessions/{sid}/grid")
    def grid_endpoint(sid: str, body: GridBody):
        session = store.get(sid)
        feed = require_feed(session)
        start = _seconds(body.window_start, "window start")
        end = _seconds(body.window_end, "window end")
        try:
            expanded = expand_frequencies(feed)
            if body.extent is not None:
                if len(body.extent) != 4:
                    raise HTTPException(422, "extent must be [min_lat, min_lon, max_lat, max_lon]")
                lo_lat, lo_lon, hi_lat, hi_lon = body.extent
                spec = GridSpec.covering([lo_lat, hi_lat], [lo_lon, hi_lon], body.cell_size_deg)
            else:
                spec = GridSpec.covering(
                    [s.lat for s in expanded.stops], [s.lon for s in expanded.stops], body.cell_size_deg
                )
            gmap = grid_frequency(
                expanded, set(body.service_ids), spec, start, end, feed_label=body.label or session.feed_name
            )
        except (UnknownServiceId, StopOutsideGrid, ValueError) as exc:
            raise HTTPException(422, str(exc))
        return Response(gj.dump_bytes(export_grid_geojson(gmap)), media_type="application/geo+json")

    @app.post("/sessions/{sid}/grid/diff")
    def grid_diff_endpoint(sid: str, body: GridDiffBody):
        store.get(sid)  # session must exist even though the diff is stateless
        try:
            diff = grid_diff(grid_map_from_geojson(body.a), grid_map_from_geojson(body.b))
        except (GridMismatch, KeyError) as exc:
            raise HTTPException(422, str(exc))
        return Response(gj.dump_bytes(export_grid_geojson(diff)), media_type="application/geo+json")

    _mount_ui(app)
    return app


def _table_rows(feed: Feed, name: str):
    """Row tuples and column names for a table preview, or (None, None)."""
    from .gtfs.export import feed_tables

    tables = feed_tables(feed)
    if name not in tables:
        return None, None
    header, rows = tables[name]
    return rows, header


def _mount_ui(app: FastAPI) -> None:
    """Serve the built web client when frontend/dist exists next to the repo."""
    dist = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    if dist.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=str(dist), html=True), name="ui")
