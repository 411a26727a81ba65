"""Line-delimited JSON exchange with an external entity tagger.

Request lines look like {"article_id": ..., "text": ...}; response lines like
{"article_id": ..., "mentions": [{"surface", "kind", "start", "end"}]}. The
exchange runs over a spawned process's stdin/stdout or over a request/response
file pair produced out of band.
"""

from __future__ import annotations

import json
import subprocess
from pathlib import Path

from cfpress.entities.tagger import EntityMention
from cfpress.errors import TaggingError


def format_request(article_id: str, text: str) -> str:
    return json.dumps({"article_id": article_id, "text": text}, ensure_ascii=False)


def write_requests(corpus, target) -> None:
    """One request line per article, in corpus order."""
    lines = [format_request(a.id, a.body) for a in corpus]
    payload = "\n".join(lines) + ("\n" if lines else "")
    if isinstance(target, (str, Path)):
        Path(target).write_text(payload, encoding="utf-8")
    else:
        target.write(payload)


def mention_from_obj(obj) -> EntityMention:
    try:
        return EntityMention(
            surface=obj["surface"],
            kind=obj["kind"],
            span=(obj["start"], obj["end"]),
        )
    except (KeyError, TypeError) as exc:
        raise TaggingError(f"malformed mention object: {obj!r} ({exc})")


def parse_response_line(line: str):
    """Returns (article_id, [EntityMention]); raises TaggingError with the line."""
    try:
        obj = json.loads(line)
        article_id = obj["article_id"]
        mentions = [mention_from_obj(m) for m in obj["mentions"]]
    except TaggingError:
        raise
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise TaggingError(f"malformed tagger response line: {line!r} ({exc})")
    return article_id, mentions


class FileExchangeTagger:
    """Serves mentions from a response file keyed by article id."""

    def __init__(self, response_path):
        self._table = {}
        text = Path(response_path).read_text(encoding="utf-8")
        for line in text.splitlines():
            if not line.strip():
                continue
            article_id, mentions = parse_response_line(line)
            self._table[article_id] = mentions

    def mentions(self, article_id: str, text: str) -> list:
        if article_id not in self._table:
            raise TaggingError(f"no tagger response for article {article_id}")
        return list(self._table[article_id])


class CommandTagger:
    """Streams one request line per article to a tagger subprocess.

    One request is in flight at a time; call close() (or use as a context
    manager) to end the process.
    """

    def __init__(self, argv):
        self._argv = list(argv)
        self._proc = None

    def _ensure(self):
        if self._proc is None or self._proc.poll() is not None:
            self._proc = subprocess.Popen(
                self._argv, stdin=subprocess.PIPE, stdout=subprocess.PIPE,
                text=True, bufsize=1)
        return self._proc

    def mentions(self, article_id: str, text: str) -> list:
        proc = self._ensure()
        proc.stdin.write(format_request(article_id, text) + "\n")
        proc.stdin.flush()
        line = proc.stdout.readline()
        if not line:
            raise TaggingError("tagger process closed its output stream")
        got_id, mentions = parse_response_line(line.rstrip("\n"))
        if got_id != article_id:
            raise TaggingError(
                f"tagger answered for {got_id!r} while {article_id!r} was requested")
        return mentions

    def close(self):
        if self._proc is not None:
            if self._proc.stdin:
                self._proc.stdin.close()
            self._proc.wait(timeout=10)
            self._proc = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
