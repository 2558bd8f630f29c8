"""Feed loading from directories and zip archives."""

import pytest

import feedgen
from gtfs2stn import load_feed
from gtfs2stn.errors import MalformedRow, MissingTable


def test_fixture_counts(base_feed):
    assert len(base_feed.routes) == 3
    assert len(base_feed.stops) == 9
    assert len(base_feed.trips) == 12
    assert len(base_feed.stop_times) == 36


def test_zip_and_directory_load_identically(base_feed, base_feed_zip):
    assert load_feed(base_feed_zip) == base_feed


def test_missing_stops_table(tmp_path):
    src = feedgen.write_tables(feedgen.base_tables(), tmp_path / "feed")
    (src / "stops.txt").unlink()
    with pytest.raises(MissingTable) as exc:
        load_feed(src)
    assert exc.value.name == "stops"


def test_missing_calendar_and_calendar_dates(tmp_path):
    src = feedgen.write_tables(feedgen.base_tables(), tmp_path / "feed")
    (src / "calendar.txt").unlink()
    (src / "calendar_dates.txt").unlink()
    with pytest.raises(MissingTable):
        load_feed(src)


def test_calendar_dates_alone_suffices(tmp_path):
    src = feedgen.write_tables(feedgen.base_tables(), tmp_path / "feed")
    (src / "calendar.txt").unlink()
    feed = load_feed(src)
    assert len(feed.calendars) == 0
    assert len(feed.calendar_exceptions) == 2


def test_missing_required_column(tmp_path):
    src = feedgen.write_tables(feedgen.base_tables(), tmp_path / "feed")
    stops = (src / "stops.txt").read_text().splitlines()
    stops[0] = stops[0].replace("stop_lat", "latitude")
    (src / "stops.txt").write_text("\n".join(stops) + "\n")
    with pytest.raises(MalformedRow) as exc:
        load_feed(src)
    assert exc.value.table == "stops"


def test_unknown_columns_ignored(tmp_path):
    src = feedgen.write_tables(feedgen.base_tables(), tmp_path / "feed")
    lines = (src / "stops.txt").read_text().splitlines()
    lines[0] += ",wheelchair_boarding"
    for i in range(1, len(lines)):
        lines[i] += ",1"
    (src / "stops.txt").write_text("\n".join(lines) + "\n")
    feed = load_feed(src)
    assert len(feed.stops) == 9


def test_utf8_bom_tolerated(tmp_path):
    src = feedgen.write_tables(feedgen.base_tables(), tmp_path / "feed")
    raw = (src / "stops.txt").read_bytes()
    (src / "stops.txt").write_bytes(b"\xef\xbb\xbf" + raw)
    feed = load_feed(src)
    assert feed.stops[0].stop_id == "A1"


def test_quoted_fields(tmp_path):
    src = feedgen.write_tables(feedgen.base_tables(), tmp_path / "feed")
    lines = (src / "stops.txt").read_text().splitlines()
    lines[1] = 'A1,"Main & 1st, downtown",36.16,-86.78'
    (src / "stops.txt").write_text("\n".join(lines) + "\n")
    feed = load_feed(src)
    assert feed.stops[0].name == "Main & 1st, downtown"


def test_duplicate_stop_sequence_keeps_first(tmp_path):
    src = feedgen.write_tables(feedgen.base_tables(), tmp_path / "feed")
    with open(src / "stop_times.txt", "a") as fh:
        fh.write("T1,07:59:00,07:59:00,A2,2\n")
    feed = load_feed(src)
    t1 = [st for st in feed.stop_times if st.trip_id == "T1" and st.stop_sequence == 2]
    assert len(t1) == 1
    assert t1[0].arrival_s == 7 * 3600 + 5 * 60


def test_nonexistent_source():
    with pytest.raises(MissingTable):
        load_feed("/nonexistent/feed")


def test_zip_with_top_level_folder(tmp_path):
    """Feeds are often zipped with a single wrapping directory."""
    import zipfile

    src = feedgen.write_tables(feedgen.base_tables(), tmp_path / "feed")
    nested = tmp_path / "nested.zip"
    with zipfile.ZipFile(nested, "w") as zf:
        for f in src.iterdir():
            zf.write(f, f"my_feed/{f.name}")
    feed = load_feed(nested)
    assert len(feed.stops) == 9
