"""Snapshot selection, description extraction, and the framework cache."""

import random
from datetime import date, datetime, timedelta

import pytest

from cfpress.errors import ExtractionError, SnapshotNotFoundError
from cfpress.simulate import (
    FrameworkCache,
    FrameworkSnapshot,
    SnapshotRef,
    WaybackClient,
    extract_description,
    fetch_framework,
    select_snapshot,
)
from cfpress.simulate.wayback import AFTER_FALLBACK_DAYS, MAX_PROBES

URL = "http://example.org/outbreak"


class StubArchive:
    """Availability stub: answers closest-overall from a fixed snapshot set."""

    def __init__(self, days, page="<meta name=\"description\" "
                                  "content=\"An outbreak description.\">"):
        self.days = sorted(days)
        self.page = page
        self.closest_calls = 0
        self.fetch_calls = 0

    def closest(self, url, timestamp):
        self.closest_calls += 1
        if not self.days:
            return None
        asked = datetime.strptime(timestamp, "%Y%m%d").date()
        best = min(self.days, key=lambda d: (abs((d - asked).days), d))
        return SnapshotRef(url=f"http://archive.example/{best:%Y%m%d}/{url}",
                           taken=best)

    def fetch(self, url):
        self.fetch_calls += 1
        return self.page


def test_closest_at_or_before():
    stub = StubArchive([date(2020, 2, 15), date(2020, 2, 28), date(2020, 3, 15)])
    ref = select_snapshot(URL, date(2020, 3, 1), stub)
    assert ref.taken == date(2020, 2, 28)
    # the first answer is already on the before side: one availability call
    assert stub.closest_calls == 1


def test_exact_date_snapshot():
    stub = StubArchive([date(2020, 3, 1), date(2020, 3, 2)])
    assert select_snapshot(URL, date(2020, 3, 1), stub).taken == date(2020, 3, 1)


def test_probe_earlier_when_closest_is_after():
    # 2020-03-03 is nearest to the ask, but 2020-01-01 is the right answer
    stub = StubArchive([date(2020, 1, 1), date(2020, 3, 3)])
    ref = select_snapshot(URL, date(2020, 3, 1), stub)
    assert ref.taken == date(2020, 1, 1)
    assert stub.closest_calls <= 1 + MAX_PROBES


def test_after_fallback_within_window():
    stub = StubArchive([date(2020, 3, 10)])
    ref = select_snapshot(URL, date(2020, 3, 1), stub)
    assert ref.taken == date(2020, 3, 10)


def test_after_fallback_too_far():
    stub = StubArchive([date(2020, 4, 1)])
    with pytest.raises(SnapshotNotFoundError):
        select_snapshot(URL, date(2020, 3, 1), stub)


def test_no_snapshots_at_all():
    with pytest.raises(SnapshotNotFoundError):
        select_snapshot(URL, date(2020, 3, 1), StubArchive([]))


def test_selection_matches_brute_force_randomized():
    rng = random.Random(37)
    as_of = date(2020, 3, 1)
    for _ in range(300):
        days = sorted({as_of + timedelta(days=rng.randint(-300, 300))
                       for _ in range(rng.randint(0, 8))})
        stub = StubArchive(days)
        before = [d for d in days if d <= as_of]
        after = [d for d in days if d > as_of]
        if before:
            expected = max(before)
        elif after and (min(after) - as_of).days <= AFTER_FALLBACK_DAYS:
            expected = min(after)
        else:
            expected = None
        if expected is None:
            with pytest.raises(SnapshotNotFoundError):
                select_snapshot(URL, as_of, stub)
        else:
            assert select_snapshot(URL, as_of, stub).taken == expected
        assert stub.closest_calls <= 1 + MAX_PROBES


def test_fetch_framework_extracts_description():
    stub = StubArchive([date(2020, 2, 28)])
    snapshot = fetch_framework(URL, date(2020, 3, 1), stub)
    assert snapshot.description == "An outbreak description."
    assert snapshot.as_of == date(2020, 3, 1)
    assert snapshot.source_url == URL
    assert "20200228" in snapshot.snapshot_url


def test_fetch_framework_cache_hit_makes_no_calls():
    stub = StubArchive([date(2020, 2, 28)])
    cache = FrameworkCache()
    first = fetch_framework(URL, date(2020, 3, 1), stub, cache=cache)
    calls = (stub.closest_calls, stub.fetch_calls)
    second = fetch_framework(URL, date(2020, 3, 1), stub, cache=cache)
    assert second == first
    assert (stub.closest_calls, stub.fetch_calls) == calls
    # a different date is a different cache key
    fetch_framework(URL, date(2020, 3, 2), stub, cache=cache)
    assert stub.fetch_calls == calls[1] + 1


def test_fetch_framework_extraction_failure_dumps_page(tmp_path):
    stub = StubArchive([date(2020, 2, 28)], page="<html><body>x</body></html>")
    with pytest.raises(ExtractionError) as exc:
        fetch_framework(URL, date(2020, 3, 1), stub, page_dump_dir=tmp_path)
    dumped = list(tmp_path.glob("failed-extract-*.html"))
    assert len(dumped) == 1
    assert dumped[0].read_text(encoding="utf-8") == "<html><body>x</body></html>"
    assert dumped[0].name in str(exc.value)


def test_extract_description_patterns():
    meta = '<meta name="description" content="Short   spaced  text">'
    assert extract_description(meta) == "Short spaced text"
    para = "<html><p class=\"lead\">First\nparagraph.</p><p>Second.</p></html>"
    assert extract_description(para) == "First paragraph."
    with pytest.raises(ExtractionError):
        extract_description("<html>nothing here</html>")


def test_framework_snapshot_requires_description():
    with pytest.raises(ExtractionError):
        FrameworkSnapshot(as_of=date(2020, 3, 1), source_url=URL,
                          snapshot_url="http://archive.example/x", description="")


class FakeResponse:
    def __init__(self, payload):
        self.payload = payload

    def raise_for_status(self):
        pass

    def json(self):
        return self.payload


class FakeSession:
    def __init__(self, payload):
        self.payload = payload
        self.requests = []

    def get(self, url, params=None, timeout=None):
        self.requests.append((url, params, timeout))
        return FakeResponse(self.payload)


def test_wayback_client_wire_shape():
    session = FakeSession({
        "archived_snapshots": {"closest": {
            "available": True,
            "url": "http://web.archive.org/web/20200228123456/" + URL,
            "timestamp": "20200228123456",
        }},
    })
    client = WaybackClient(session=session)
    ref = client.closest(URL, "20200301")
    assert ref.taken == date(2020, 2, 28)
    assert ref.url.endswith(URL)
    url, params, timeout = session.requests[0]
    assert params == {"url": URL, "timestamp": "20200301"}
    assert timeout == client.timeout


def test_wayback_client_handles_empty_answers():
    client = WaybackClient(session=FakeSession({"archived_snapshots": {}}))
    assert client.closest(URL, "20200301") is None
    unavailable = {"archived_snapshots": {"closest": {"available": False}}}
    client = WaybackClient(session=FakeSession(unavailable))
    assert client.closest(URL, "20200301") is None
