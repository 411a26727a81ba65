"""News corpus ingestion, cleaning, deduplication, pairing, and serialization.

Supported inputs are the Kaggle CBC CSV schema (title, description, authors,
publish_date, url, text) and JSONL with one article object per line. The
canonical on-disk form is JSONL with a stable field order, so re-ingesting a
serialized corpus reproduces the same article ids.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import re
from dataclasses import dataclass, field
from datetime import date, datetime
from importlib import resources
from pathlib import Path

from cfpress.errors import AmbiguityError, CfpressError, SchemaError

ORIGINS = ("real", "generated")
KAGGLE_CBC_COLUMNS = ("title", "description", "authors", "publish_date", "url", "text")
JSONL_FIELDS = ("id", "title", "description", "byline", "published_at",
                "url", "body", "origin", "model_tag")
ID_BODY_PREFIX = 200
BOILERPLATE_RESOURCE = "boilerplate_patterns.txt"


@dataclass(frozen=True)
class Article:
    """One news item, real or generated."""

    id: str
    title: str
    description: str
    byline: str | None
    published_at: date
    url: str | None
    body: str
    origin: str
    model_tag: str | None = None

    def __post_init__(self):
        if self.origin not in ORIGINS:
            raise CfpressError(f"origin must be one of {ORIGINS}, got {self.origin!r}")
        if not self.body.strip():
            raise CfpressError("article body must be non-empty")
        if not isinstance(self.published_at, date):
            raise CfpressError("published_at must be a date")


@dataclass(frozen=True)
class Corpus:
    """An immutable, deduplicated collection of articles."""

    articles: tuple
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "articles", tuple(self.articles))
        seen = set()
        for article in self.articles:
            if article.id in seen:
                raise CfpressError(f"duplicate article id in corpus: {article.id}")
            seen.add(article.id)

    def __len__(self):
        return len(self.articles)

    def __iter__(self):
        return iter(self.articles)

    @property
    def span(self):
        """(earliest, latest) publication date, or (None, None) when empty."""
        if not self.articles:
            return (None, None)
        dates = [a.published_at for a in self.articles]
        return (min(dates), max(dates))


@dataclass(frozen=True)
class ArticlePair:
    """A real article and its generated counterpart sharing metadata."""

    real: Article
    generated: Article

    def __post_init__(self):
        if self.real.origin != "real" or self.generated.origin != "generated":
            raise CfpressError("pair sides must have origins real/generated")
        if (self.real.title, self.real.description) != \
                (self.generated.title, self.generated.description):
            raise CfpressError("paired articles must share title and description")


@dataclass(frozen=True)
class IngestSummary:
    """Row accounting for one ingest run; read = retained + deduped + rejected."""

    read: int
    retained: int
    cleaned: int
    deduped: int
    rejected: int


@dataclass(frozen=True)
class IngestResult:
    corpus: Corpus
    summary: IngestSummary
    rejects: tuple  # of {"row": int, "reason": str}


@dataclass(frozen=True)
class PairResult:
    pairs: tuple
    unmatched_real: tuple
    unmatched_generated: tuple


def _normalize_for_id(text: str) -> str:
    return " ".join(text.split()).casefold()


def article_id(title: str, body: str) -> str:
    """Deterministic 64-bit content hash over the normalized title and body prefix."""
    key = _normalize_for_id(title) + "\n" + _normalize_for_id(body)[:ID_BODY_PREFIX]
    return hashlib.sha256(key.encode("utf-8")).hexdigest()[:16]


def default_boilerplate_patterns() -> list:
    """Boilerplate regexes shipped with the package, one per non-comment line."""
    text = resources.files("cfpress").joinpath("data", BOILERPLATE_RESOURCE) \
        .read_text(encoding="utf-8")
    return load_boilerplate_patterns(text)


def load_boilerplate_patterns(text: str) -> list:
    patterns = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            patterns.append(line)
    return patterns


def _compile_patterns(patterns) -> list:
    return [re.compile(p, re.MULTILINE) for p in patterns]


def clean(raw_body: str, patterns=None) -> str:
    """Strip boilerplate spans and collapse whitespace runs to single spaces."""
    if patterns is None:
        patterns = default_boilerplate_patterns()
    text = raw_body
    for regex in _compile_patterns(patterns):
        text = regex.sub(" ", text)
    return " ".join(text.split())


def parse_published(value: str) -> date:
    """Parse ISO-8601 dates/datetimes and 'Month D, YYYY'."""
    text = (value or "").strip()
    if not text:
        raise ValueError("empty date")
    try:
        return datetime.fromisoformat(text.replace("Z", "+00:00")).date()
    except ValueError:
        pass
    try:
        return date.fromisoformat(text)
    except ValueError:
        pass
    return datetime.strptime(text, "%B %d, %Y").date()


def _read_text(source) -> str:
    """Decode a path, byte string, or file object as UTF-8 text."""
    if isinstance(source, (str, Path)):
        return Path(source).read_text(encoding="utf-8-sig")
    if isinstance(source, bytes):
        return source.decode("utf-8-sig")
    data = source.read()
    if isinstance(data, bytes):
        return data.decode("utf-8-sig")
    return data


def _build_article(title, description, byline, published_raw, url, raw_body,
                   origin, model_tag, patterns):
    """Returns (article, was_cleaned) or raises ValueError with a reject reason."""
    title = (title or "").strip()
    if not title:
        raise ValueError("empty title")
    try:
        published = parse_published(published_raw)
    except ValueError:
        raise ValueError(f"unparseable date: {published_raw!r}")
    body = clean(raw_body or "", patterns)
    if not body:
        raise ValueError("empty body after cleaning")
    article = Article(
        id=article_id(title, body),
        title=title,
        description=(description or "").strip(),
        byline=(byline or "").strip() or None,
        published_at=published,
        url=(url or "").strip() or None,
        body=body,
        origin=origin,
        model_tag=model_tag or None,
    )
    return article, body != (raw_body or "")


def ingest(source, format: str, label: str = "", origin: str = "real",
           patterns=None) -> IngestResult:
    """Read, clean, and deduplicate a corpus from CSV or JSONL.

    Unparseable rows go to the reject list with a 1-based row number and a
    reason; ingest continues. Duplicate ids keep the first occurrence.
    """
    if patterns is None:
        patterns = default_boilerplate_patterns()
    text = _read_text(source)
    if format == "kaggle_cbc_csv":
        candidates, rejects, read = _rows_from_csv(text, origin, patterns)
    elif format == "jsonl":
        candidates, rejects, read = _rows_from_jsonl(text, origin, patterns)
    else:
        raise SchemaError(f"unknown ingest format: {format!r}")

    articles = []
    seen = set()
    deduped = 0
    cleaned = 0
    for article, was_cleaned in candidates:
        if article.id in seen:
            deduped += 1
            continue
        seen.add(article.id)
        articles.append(article)
        cleaned += was_cleaned
    summary = IngestSummary(
        read=read,
        retained=len(articles),
        cleaned=cleaned,
        deduped=deduped,
        rejected=len(rejects),
    )
    return IngestResult(
        corpus=Corpus(articles=tuple(articles), label=label),
        summary=summary,
        rejects=tuple(rejects),
    )


def _rows_from_csv(text, origin, patterns):
    reader = csv.DictReader(io.StringIO(text))
    header = reader.fieldnames or []
    missing = [c for c in KAGGLE_CBC_COLUMNS if c not in header]
    if missing:
        raise SchemaError(f"missing column(s): {', '.join(missing)}")
    candidates = []
    rejects = []
    read = 0
    for row_no, row in enumerate(reader, start=1):
        read += 1
        try:
            candidates.append(_build_article(
                row.get("title"), row.get("description"), row.get("authors"),
                row.get("publish_date"), row.get("url"), row.get("text"),
                origin, None, patterns))
        except ValueError as exc:
            rejects.append({"row": row_no, "reason": str(exc)})
    return candidates, rejects, read


def _rows_from_jsonl(text, default_origin, patterns):
    candidates = []
    rejects = []
    read = 0
    for row_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        read += 1
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            rejects.append({"row": row_no, "reason": f"invalid json: {exc.msg}"})
            continue
        try:
            candidates.append(_build_article(
                record.get("title"), record.get("description"), record.get("byline"),
                record.get("published_at"), record.get("url"), record.get("body"),
                record.get("origin", default_origin), record.get("model_tag"),
                patterns))
        except (ValueError, CfpressError) as exc:
            rejects.append({"row": row_no, "reason": str(exc)})
    return candidates, rejects, read


def load_corpus(source, label: str = "") -> Corpus:
    """Strict read of a canonical corpus JSONL file; any bad row is an error."""
    result = ingest(source, "jsonl", label=label)
    if result.rejects:
        first = result.rejects[0]
        raise SchemaError(f"corpus row {first['row']}: {first['reason']}")
    return result.corpus


def article_to_record(article: Article) -> dict:
    """Article as a plain dict in canonical field order."""
    return {
        "id": article.id,
        "title": article.title,
        "description": article.description,
        "byline": article.byline,
        "published_at": article.published_at.isoformat(),
        "url": article.url,
        "body": article.body,
        "origin": article.origin,
        "model_tag": article.model_tag,
    }


def serialize(corpus: Corpus, target) -> None:
    """Write canonical corpus JSONL: UTF-8, one object per line, stable field order."""
    lines = [json.dumps(article_to_record(a), ensure_ascii=False) for a in corpus]
    payload = "\n".join(lines) + ("\n" if lines else "")
    if isinstance(target, (str, Path)):
        Path(target).write_text(payload, encoding="utf-8")
    else:
        target.write(payload)


def write_rejects(rejects, target) -> None:
    """Write the reject log as JSONL rows of {row, reason}."""
    lines = [json.dumps(r, ensure_ascii=False) for r in rejects]
    payload = "\n".join(lines) + ("\n" if lines else "")
    if isinstance(target, (str, Path)):
        Path(target).write_text(payload, encoding="utf-8")
    else:
        target.write(payload)


def pair(real: Corpus, generated: Corpus) -> PairResult:
    """Match real to generated articles on exact (title, description).

    Raises AmbiguityError when either side has two articles with the same
    key; unmatched articles are reported, never silently dropped.
    """
    def keyed(corpus, side):
        table = {}
        collisions = []
        for article in corpus:
            key = (article.title, article.description)
            if key in table:
                collisions.append(article.title)
            else:
                table[key] = article
        if collisions:
            raise AmbiguityError(
                f"duplicate (title, description) on {side} side: "
                + "; ".join(sorted(set(collisions))))
        return table

    real_keys = keyed(real, "real")
    generated_keys = keyed(generated, "generated")

    pairs = []
    unmatched_real = []
    for article in real:
        match = generated_keys.get((article.title, article.description))
        if match is None:
            unmatched_real.append(article)
        else:
            pairs.append(ArticlePair(real=article, generated=match))
    matched_keys = {(p.real.title, p.real.description) for p in pairs}
    unmatched_generated = [a for a in generated
                           if (a.title, a.description) not in matched_keys]
    return PairResult(
        pairs=tuple(pairs),
        unmatched_real=tuple(unmatched_real),
        unmatched_generated=tuple(unmatched_generated),
    )
