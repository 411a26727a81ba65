"""Dated framework descriptions from a web-archive availability API.

The availability endpoint answers "closest snapshot to this timestamp"; the
selection rule here is closest at-or-before the requested date, found with a
bounded probe-earlier search, falling back to the closest-after snapshot
within 14 days. Snapshots are cached by (source_url, as_of) so repeat calls
make no network requests.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from datetime import date, datetime, timedelta
from pathlib import Path

import requests

from cfpress.errors import ExtractionError, SnapshotNotFoundError

AVAILABILITY_URL = "https://archive.org/wayback/available"
AFTER_FALLBACK_DAYS = 14
MAX_LOOKBACK_DAYS = 3650
MAX_PROBES = 40

# default per-source extraction patterns; first capture group is the text
DEFAULT_EXTRACTORS = (r"<meta name=\"description\" content=\"([^\"]+)\"",
                      r"(?s)<p[^>]*>(.*?)</p>")


@dataclass(frozen=True)
class FrameworkSnapshot:
    """One dated description block pulled from an archived page."""

    as_of: date
    source_url: str
    snapshot_url: str
    description: str

    def __post_init__(self):
        if not self.description:
            raise ExtractionError("framework description must be non-empty")


@dataclass(frozen=True)
class SnapshotRef:
    url: str
    taken: date


class WaybackClient:
    """Thin HTTP client for the availability API and snapshot pages."""

    def __init__(self, availability_url: str = AVAILABILITY_URL, timeout: float = 30.0,
                 session=None):
        self.availability_url = availability_url
        self.timeout = timeout
        self.session = session or requests.Session()

    def closest(self, url: str, timestamp: str):
        """Closest snapshot to YYYYMMDD, or None when the archive has nothing."""
        resp = self.session.get(self.availability_url,
                                params={"url": url, "timestamp": timestamp},
                                timeout=self.timeout)
        resp.raise_for_status()
        closest = (resp.json().get("archived_snapshots") or {}).get("closest") or {}
        if not closest.get("available") or not closest.get("url"):
            return None
        taken = datetime.strptime(closest["timestamp"][:8], "%Y%m%d").date()
        return SnapshotRef(url=closest["url"], taken=taken)

    def fetch(self, url: str) -> str:
        resp = self.session.get(url, timeout=self.timeout)
        resp.raise_for_status()
        return resp.text


def _ts(day: date) -> str:
    return day.strftime("%Y%m%d")


def select_snapshot(source_url: str, as_of: date, client) -> SnapshotRef:
    """Pick the snapshot closest at-or-before as_of; else closest-after <= 14 d.

    The availability API only answers closest-overall, so when it points
    after as_of the search probes earlier timestamps (doubling steps, then
    bisection) to locate the latest snapshot on the before side.
    """
    first = client.closest(source_url, _ts(as_of))
    if first is None:
        raise SnapshotNotFoundError(f"no archive snapshot for {source_url}")
    if first.taken <= as_of:
        # anything at-or-before closer to as_of would also be closer overall
        return first

    after = first
    best = None
    probes = 0

    # double backwards until a before-side snapshot answers
    step = 1
    while step <= MAX_LOOKBACK_DAYS and probes < MAX_PROBES:
        probe = client.closest(source_url, _ts(as_of - timedelta(days=step)))
        probes += 1
        if probe is not None and probe.taken <= as_of:
            best = probe
            break
        step *= 2

    if best is not None:
        # bisect (best.taken, as_of] for anything later on the before side;
        # a before-side answer to a mid query pins everything up to mid, an
        # after-side answer proves the latest before-snapshot is older
        lo = best.taken + timedelta(days=1)
        hi = as_of
        while lo <= hi and probes < MAX_PROBES:
            mid = lo + timedelta(days=(hi - lo).days // 2)
            probe = client.closest(source_url, _ts(mid))
            probes += 1
            if probe is not None and probe.taken <= as_of:
                if probe.taken > best.taken:
                    best = probe
                lo = max(mid, probe.taken) + timedelta(days=1)
            else:
                hi = mid - timedelta(days=1)
        return best

    if (after.taken - as_of).days <= AFTER_FALLBACK_DAYS:
        return after
    raise SnapshotNotFoundError(
        f"no snapshot at or before {as_of} for {source_url}, and the next one "
        f"({after.taken}) is outside the {AFTER_FALLBACK_DAYS}-day fallback window")


def extract_description(page: str, patterns=DEFAULT_EXTRACTORS,
                        page_dump_path=None) -> str:
    """First capture group of the first matching pattern, whitespace-collapsed."""
    for pattern in patterns:
        match = re.search(pattern, page)
        if match:
            text = " ".join(match.group(1).split())
            if text:
                return text
    if page_dump_path is not None:
        Path(page_dump_path).write_text(page, encoding="utf-8")
        raise ExtractionError(
            f"no extraction pattern matched; page saved to {page_dump_path}")
    raise ExtractionError("no extraction pattern matched")


class FrameworkCache:
    """In-memory snapshot cache keyed by (source_url, as_of)."""

    def __init__(self):
        self._store = {}

    def get(self, source_url: str, as_of: date):
        return self._store.get((source_url, as_of.isoformat()))

    def put(self, snapshot: FrameworkSnapshot):
        self._store[(snapshot.source_url, snapshot.as_of.isoformat())] = snapshot


def fetch_framework(source_url: str, as_of: date, client,
                    patterns=DEFAULT_EXTRACTORS, cache=None,
                    page_dump_dir=None) -> FrameworkSnapshot:
    """Snapshot selection + page fetch + description extraction, cached."""
    if cache is not None:
        hit = cache.get(source_url, as_of)
        if hit is not None:
            return hit
    ref = select_snapshot(source_url, as_of, client)
    page = client.fetch(ref.url)
    dump = None
    if page_dump_dir is not None:
        dump = Path(page_dump_dir) / f"failed-extract-{_ts(as_of)}.html"
    description = extract_description(page, patterns, page_dump_path=dump)
    snapshot = FrameworkSnapshot(as_of=as_of, source_url=source_url,
                                 snapshot_url=ref.url, description=description)
    if cache is not None:
        cache.put(snapshot)
    return snapshot
