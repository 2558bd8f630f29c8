"""Feed round-trip: parse -> write -> parse equality."""

from gtfs2stn import load_feed, write_feed


def _assert_round_trip(feed, tmp_path, as_zip):
    dest = tmp_path / ("out.zip" if as_zip else "out")
    write_feed(feed, dest)
    reparsed = load_feed(dest)
    assert reparsed.normalized() == feed.normalized()


def test_base_feed_round_trip_dir(base_feed, tmp_path):
    _assert_round_trip(base_feed, tmp_path, as_zip=False)


def test_base_feed_round_trip_zip(base_feed, tmp_path):
    _assert_round_trip(base_feed, tmp_path, as_zip=True)


def test_freq_feed_round_trip(freq_feed, tmp_path):
    """Covers the optional tables: frequencies, transfers, shapes, calendar_dates."""
    assert freq_feed.frequencies and freq_feed.transfers and freq_feed.shapes
    _assert_round_trip(freq_feed, tmp_path, as_zip=False)


def test_double_round_trip_is_stable(base_feed, tmp_path):
    write_feed(base_feed, tmp_path / "a")
    first = load_feed(tmp_path / "a")
    write_feed(first, tmp_path / "b")
    second = load_feed(tmp_path / "b")
    assert first == second
