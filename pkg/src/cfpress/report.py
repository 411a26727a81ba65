"""Per-article measures and the report artifacts built from them.

Measurement collapses each article to one row (sentiment, entity tallies,
focus); the writers emit the JSONL/CSV/JSON files and SVG plots that the
command-line pipeline produces.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from datetime import date
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from cfpress.entities import BuiltinTagger, tag, tally, tally_record
from cfpress.errors import SchemaError
from cfpress.keyness import FrequencyTable
from cfpress.sentiment import DEFAULT_FLIP_RULES, default_lexicon, score_article
from cfpress.stats import ComparisonReport, SeriesPoint, StageStats

SVG_HASHSALT = "cfpress"

MEASURE_FIELDS = (
    "article_id", "published_at", "mean_compound", "n_sentences",
    "person", "gpe", "org", "unique_entities", "token_length", "focus",
)


@dataclass(frozen=True)
class MeasureRow:
    """One article collapsed to the measures the comparisons consume."""

    article_id: str
    published_at: date
    mean_compound: float
    n_sentences: int
    person: int
    gpe: int
    org: int
    unique_entities: int
    token_length: int
    focus: float


def measure_article(article, lexicon, rules, tagger) -> MeasureRow:
    sentiment = score_article(article, lexicon, rules)
    record = tally_record(tally(article, tag(article, tagger)))
    return MeasureRow(
        article_id=article.id,
        published_at=article.published_at,
        mean_compound=sentiment.mean_compound,
        n_sentences=sentiment.n_sentences,
        person=record["person"],
        gpe=record["gpe"],
        org=record["org"],
        unique_entities=record["unique_entities"],
        token_length=record["token_length"],
        focus=record["focus"],
    )


def measure_corpus(corpus, lexicon=None, rules=DEFAULT_FLIP_RULES,
                   tagger=None) -> list:
    """Measure every article; rows come back in corpus order."""
    if lexicon is None:
        lexicon = default_lexicon()
    if tagger is None:
        tagger = BuiltinTagger()
    return [measure_article(a, lexicon, rules, tagger) for a in corpus]


def row_to_record(row: MeasureRow) -> dict:
    record = {name: getattr(row, name) for name in MEASURE_FIELDS}
    record["published_at"] = row.published_at.isoformat()
    return record


def record_to_row(record: dict) -> MeasureRow:
    missing = [name for name in MEASURE_FIELDS if name not in record]
    if missing:
        raise SchemaError(f"measure row missing fields: {', '.join(missing)}")
    values = dict(record)
    values["published_at"] = date.fromisoformat(values["published_at"])
    return MeasureRow(**{name: values[name] for name in MEASURE_FIELDS})


def write_measures(rows, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for row in rows:
            handle.write(json.dumps(row_to_record(row), ensure_ascii=False) + "\n")


def read_measures(path) -> list:
    rows = []
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            if line.strip():
                rows.append(record_to_row(json.loads(line)))
    return rows


def write_frequency_table(table: FrequencyTable, path) -> None:
    payload = {
        "corpus_label": table.corpus_label,
        "N": table.N,
        "counts": {w: table.counts[w] for w in sorted(table.counts)},
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, ensure_ascii=False, indent=2, sort_keys=True)
        handle.write("\n")


def read_frequency_table(path) -> FrequencyTable:
    with open(path, encoding="utf-8") as handle:
        payload = json.load(handle)
    for field in ("corpus_label", "N", "counts"):
        if field not in payload:
            raise SchemaError(f"frequency table missing field: {field}")
    return FrequencyTable(corpus_label=payload["corpus_label"],
                          N=payload["N"], counts=dict(payload["counts"]))


def _stage_record(stats: StageStats) -> dict:
    return {"n": stats.n, "mean": stats.mean, "sd": stats.sd}


def report_to_record(report: ComparisonReport) -> dict:
    return {
        "measure": report.measure,
        "label_a": report.label_a,
        "label_b": report.label_b,
        "n_a": report.n_a,
        "n_b": report.n_b,
        "cohen_d": report.cohen_d,
        "overlap": report.overlap,
        "pearson_r_paired": report.pearson_r_paired,
        "pearson_r_weekly": report.pearson_r_weekly,
        "stage_split_date": report.stage_split_date.isoformat(),
        "stages_a": [_stage_record(s) for s in report.stages_a],
        "stages_b": [_stage_record(s) for s in report.stages_b],
    }


def write_comparison(reports, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump([report_to_record(r) for r in reports], handle,
                  ensure_ascii=False, indent=2)
        handle.write("\n")


def write_weekly_csv(series, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["week", "mean", "n"])
        for point in series:
            writer.writerow([point.week, f"{point.mean:.6f}", point.n])


def read_weekly_csv(path) -> list:
    points = []
    with open(path, encoding="utf-8", newline="") as handle:
        for record in csv.DictReader(handle):
            points.append(SeriesPoint(week=record["week"],
                                      mean=float(record["mean"]),
                                      n=int(record["n"])))
    return points


def write_keyness_csv(entries, path) -> None:
    """Ranked keywords with observed/expected counts on both sides."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["word", "count_a", "count_b", "expected_a",
                         "expected_b", "log_likelihood", "favored"])
        for e in entries:
            writer.writerow([e.word, e.O[0], e.O[1], f"{e.E[0]:.6f}",
                             f"{e.E[1]:.6f}", f"{e.LL:.6f}", e.favored])


def _save_svg(fig, path) -> None:
    with plt.rc_context({"svg.hashsalt": SVG_HASHSALT}):
        fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def plot_weekly_sentiment(series_a, series_b, label_a, label_b, path) -> None:
    """Two weekly mean-sentiment lines over the union of ISO weeks."""
    weeks = sorted({p.week for p in series_a} | {p.week for p in series_b})
    index = {w: i for i, w in enumerate(weeks)}
    fig, ax = plt.subplots(figsize=(8, 4.5))
    for series, label, marker in ((series_a, label_a, "o"),
                                  (series_b, label_b, "s")):
        xs = [index[p.week] for p in series]
        ys = [p.mean for p in series]
        ax.plot(xs, ys, marker=marker, label=label)
    ax.set_xticks(range(len(weeks)))
    ax.set_xticklabels(weeks, rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("mean compound polarity")
    ax.set_xlabel("ISO week")
    ax.axhline(0.0, color="grey", linewidth=0.5)
    ax.legend()
    fig.tight_layout()
    _save_svg(fig, path)


def plot_entity_means(rows_a, rows_b, label_a, label_b, path) -> None:
    """Average mentions per article for each entity kind, side by side."""
    kinds = ("person", "gpe", "org")

    def averages(rows):
        rows = list(rows)
        if not rows:
            return [0.0 for _ in kinds]
        return [sum(getattr(r, k) for r in rows) / len(rows) for k in kinds]

    xs = range(len(kinds))
    width = 0.38
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar([x - width / 2 for x in xs], averages(rows_a), width, label=label_a)
    ax.bar([x + width / 2 for x in xs], averages(rows_b), width, label=label_b)
    ax.set_xticks(list(xs))
    ax.set_xticklabels(kinds)
    ax.set_ylabel("mean mentions per article")
    ax.legend()
    fig.tight_layout()
    _save_svg(fig, path)


def normalized_focus(rows) -> list:
    """Min-max normalize focus within one corpus; constant focus maps to 0.5."""
    values = [r.focus for r in rows]
    if not values:
        return []
    lo, hi = min(values), max(values)
    if hi == lo:
        return [0.5 for _ in values]
    return [(v - lo) / (hi - lo) for v in values]


def plot_focus_scatter(rows_a, rows_b, label_a, label_b, path) -> None:
    """Normalized focus against mean sentiment, one point per article."""
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for rows, label, marker in ((list(rows_a), label_a, "o"),
                                (list(rows_b), label_b, "s")):
        ax.scatter(normalized_focus(rows), [r.mean_compound for r in rows],
                   label=label, marker=marker, alpha=0.7)
    ax.set_xlabel("normalized focus")
    ax.set_ylabel("mean compound polarity")
    ax.legend()
    fig.tight_layout()
    _save_svg(fig, path)
