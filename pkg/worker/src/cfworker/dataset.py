"""Build the fine-tuning text file from a corpus JSONL.

Each retained article becomes one line shaped like a Python dict literal
with single-quoted keys and values and a filled text key:

    {'title': 'T', 'description': 'D', 'text': 'BODY'}

Backslashes, single quotes, and newline/carriage-return/tab characters are
escaped inside values, so a record never spans lines. This is the same
grammar the generation prompts use; the serving side completes the text
value of such a record.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path

from cfworker.errors import DatasetError

log = logging.getLogger(__name__)

_ESCAPES = [("\\", "\\\\"), ("'", "\\'"), ("\n", "\\n"), ("\r", "\\r"),
            ("\t", "\\t")]

REQUIRED_FIELDS = ("id", "title", "description", "body")


@dataclass(frozen=True)
class TrainingDataset:
    """Serialized records plus the stats the build reports."""

    records: tuple
    source_count: int
    mean_words: float


def escape_value(value: str) -> str:
    for raw, escaped in _ESCAPES:
        value = value.replace(raw, escaped)
    return value


def serialize_dictionary(dictionary: dict) -> str:
    parts = [f"'{escape_value(k)}': '{escape_value(v)}'"
             for k, v in dictionary.items()]
    return "{" + ", ".join(parts) + "}"


def record_for(row: dict) -> str:
    return serialize_dictionary({
        "title": row["title"],
        "description": row["description"],
        "text": row["body"],
    })


def _usable(row, line_no) -> bool:
    for field in REQUIRED_FIELDS:
        value = row.get(field)
        if not isinstance(value, str) or not value.strip():
            log.warning("line %d: missing or empty %r, skipped", line_no, field)
            return False
    return True


def build_training_file(corpus_path, out_path) -> TrainingDataset:
    """One serialized dictionary per article, deduplicated by id.

    Unusable lines are skipped and logged; an empty result is an error.
    """
    records = []
    word_counts = []
    seen_ids = set()
    source_count = 0
    with open(corpus_path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            source_count += 1
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                log.warning("line %d: not JSON (%s), skipped", line_no, exc)
                continue
            if not isinstance(row, dict):
                log.warning("line %d: not an object, skipped", line_no)
                continue
            if not _usable(row, line_no):
                continue
            if row["id"] in seen_ids:
                log.warning("line %d: duplicate id %s, skipped",
                            line_no, row["id"])
                continue
            seen_ids.add(row["id"])
            records.append(record_for(row))
            word_counts.append(len(row["body"].split()))

    if not records:
        raise DatasetError(f"no usable articles in {corpus_path}")

    Path(out_path).write_text("\n".join(records) + "\n", encoding="utf-8")
    return TrainingDataset(
        records=tuple(records),
        source_count=source_count,
        mean_words=sum(word_counts) / len(word_counts),
    )
