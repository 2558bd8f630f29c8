"""Shared fixtures: synthetic feeds written once per session, plus built networks."""

from __future__ import annotations

import pytest

from gtfs2stn import BuildConfig, build_network, load_feed

import feedgen


@pytest.fixture(scope="session")
def base_feed_dir(tmp_path_factory):
    return feedgen.write_tables(feedgen.base_tables(), tmp_path_factory.mktemp("feeds") / "base")


@pytest.fixture(scope="session")
def base_feed(base_feed_dir):
    return load_feed(base_feed_dir)


@pytest.fixture(scope="session")
def base_feed_zip(tmp_path_factory):
    return feedgen.write_tables(feedgen.base_tables(), tmp_path_factory.mktemp("feeds") / "base.zip")


@pytest.fixture(scope="session")
def wkdy_net(base_feed):
    return build_network(base_feed, BuildConfig(service_ids=frozenset({"WKDY"})))


@pytest.fixture(scope="session")
def golden_feed(tmp_path_factory):
    path = feedgen.write_tables(feedgen.golden_tables(), tmp_path_factory.mktemp("feeds") / "golden")
    return load_feed(path)


@pytest.fixture(scope="session")
def golden_net(golden_feed):
    return build_network(golden_feed, BuildConfig(service_ids=frozenset({"GS"})))


@pytest.fixture(scope="session")
def walk_feed(tmp_path_factory):
    path = feedgen.write_tables(feedgen.walk_tables(), tmp_path_factory.mktemp("feeds") / "walk")
    return load_feed(path)


@pytest.fixture(scope="session")
def walk_net(walk_feed):
    return build_network(walk_feed, BuildConfig(service_ids=frozenset({"WS"})))


@pytest.fixture(scope="session")
def freq_feed_dir(tmp_path_factory):
    return feedgen.write_tables(feedgen.freq_tables(), tmp_path_factory.mktemp("feeds") / "freq")


@pytest.fixture(scope="session")
def freq_feed(freq_feed_dir):
    return load_feed(freq_feed_dir)


@pytest.fixture(scope="session")
def grid_feed(tmp_path_factory):
    path = feedgen.write_tables(feedgen.grid_tables(), tmp_path_factory.mktemp("feeds") / "grid")
    return load_feed(path)


@pytest.fixture(scope="session")
def grid_feed_doubled(tmp_path_factory):
    path = feedgen.write_tables(feedgen.grid_tables(double=True), tmp_path_factory.mktemp("feeds") / "grid2")
    return load_feed(path)
