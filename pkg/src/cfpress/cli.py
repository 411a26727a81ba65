"""Command-line pipeline: ingest, generate, measure, compare.

Exit codes: 0 success, 1 runtime failure, 2 usage or schema error. Every
command locks its output directory and leaves a manifest.json recording the
inputs, settings, and outputs of the run.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import shlex
import sys
from datetime import date, datetime, timezone
from pathlib import Path

from filelock import FileLock, Timeout

import cfpress
from cfpress.config import resolve
from cfpress.corpus import ingest, load_corpus, serialize, write_rejects
from cfpress.entities import BuiltinTagger, CommandTagger
from cfpress.errors import (
    AmbiguityError,
    CfpressError,
    ConfigError,
    SchemaError,
    TaggingError,
)
from cfpress.keyness import build_frequency_table, rank_keywords
from cfpress.report import (
    measure_article,
    plot_entity_means,
    plot_focus_scatter,
    plot_weekly_sentiment,
    read_measures,
    write_comparison,
    write_frequency_table,
    write_keyness_csv,
    write_measures,
    write_weekly_csv,
)
from cfpress.sentiment import DEFAULT_FLIP_RULES, default_lexicon, score_article
from cfpress.simulate import (
    FrameworkCache,
    FrameworkSnapshot,
    GenerationConfig,
    HttpCompletionClient,
    WaybackClient,
    fetch_framework,
    model_tag,
    run_generation,
)
from cfpress.stats import DEFAULT_STAGE_SPLIT, compare_measure, weekly_series

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2

INGEST_FORMATS = {"kaggle-cbc": "kaggle_cbc_csv", "jsonl": "jsonl"}

COMPARED_MEASURES = ("mean_compound", "focus", "person", "gpe", "org",
                     "unique_entities", "token_length")


def _sha256_file(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _write_manifest(out_dir: Path, command: str, settings: dict, inputs,
                    outputs, started: str) -> None:
    manifest = {
        "command": command,
        "version": cfpress.__version__,
        "settings": settings,
        "inputs": {str(p): _sha256_file(p) for p in inputs},
        "outputs": sorted(str(p) for p in outputs),
        "started_at": started,
        "finished_at": _utc_now(),
    }
    path = out_dir / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n",
                    encoding="utf-8")


def _lock(out_dir: Path) -> FileLock:
    return FileLock(out_dir / ".cfpress.lock", timeout=0)


def _require_file(path) -> Path:
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"input file not found: {p}")
    return p


def _settings(args, keys) -> dict:
    flags = {key: getattr(args, key, None) for key in keys}
    return resolve(flags, config_path=getattr(args, "config", None))


def _parse_temperatures(text: str) -> list:
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number list: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty temperature list")
    return values


def _parse_date(text: str) -> date:
    try:
        return date.fromisoformat(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an ISO date: {text!r}")


def cmd_ingest(args) -> int:
    source = _require_file(args.input)
    out = Path(args.out)
    out_dir = out.parent if str(out.parent) else Path(".")
    out_dir.mkdir(parents=True, exist_ok=True)
    started = _utc_now()
    settings = _settings(args, ())
    with _lock(out_dir):
        result = ingest(source, INGEST_FORMATS[args.format], label=args.label)
        serialize(result.corpus, out)
        rejects_path = out.with_name(out.stem + ".rejects.jsonl")
        write_rejects(result.rejects, rejects_path)
        _write_manifest(out_dir, "ingest", settings, [source],
                        [out.name, rejects_path.name], started)
    s = result.summary
    print(f"read={s.read} retained={s.retained} cleaned={s.cleaned} "
          f"deduped={s.deduped} rejected={s.rejected}")
    return EXIT_OK


def _framework_provider(args, settings, strategy):
    """Build the article -> FrameworkSnapshot callable for static/rolling."""
    if strategy == "standard":
        return None
    if args.framework_file:
        payload = json.loads(_require_file(args.framework_file).read_text(
            encoding="utf-8"))
        snapshot = FrameworkSnapshot(
            as_of=date.fromisoformat(payload["as_of"]),
            source_url=payload["source_url"],
            snapshot_url=payload["snapshot_url"],
            description=payload["description"],
        )
        return lambda article: snapshot
    if args.framework_url:
        client = WaybackClient()
        cache = FrameworkCache()
        if strategy == "static":
            if args.framework_as_of is None:
                raise ConfigError(
                    "static strategy with --framework-url needs --framework-as-of")
            snapshot = fetch_framework(args.framework_url, args.framework_as_of,
                                       client, cache=cache)
            return lambda article: snapshot
        return lambda article: fetch_framework(
            args.framework_url, article.published_at, client, cache=cache)
    raise ConfigError(
        f"{strategy} strategy needs --framework-file or --framework-url")


def cmd_generate(args) -> int:
    source = _require_file(args.corpus)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    keys = ("endpoint", "cache_dir", "model", "strategy", "temperature",
            "max_tokens", "max_in_flight", "retry_attempts", "retry_backoff")
    settings = _settings(args, keys)
    if not settings.get("endpoint"):
        raise ConfigError("no endpoint configured (flag, config, or CFP_ENDPOINT)")
    strategy = settings.get("strategy") or "standard"
    cache_dir = settings.get("cache_dir") or str(out_dir / "cache")
    config = GenerationConfig(
        endpoint=settings["endpoint"],
        model=settings.get("model"),
        temperature=settings.get("temperature", 0.50),
        max_tokens=settings.get("max_tokens", 750),
        max_in_flight=settings.get("max_in_flight", 4),
        retry_attempts=settings.get("retry_attempts", 3),
        retry_backoff=settings.get("retry_backoff", 0.5),
        cache_dir=cache_dir,
    )
    temperatures = args.temperatures or [config.temperature]
    started = _utc_now()
    with _lock(out_dir):
        corpus = load_corpus(source)
        provider = _framework_provider(args, settings, strategy)
        client = HttpCompletionClient(config.endpoint, timeout=config.timeout)
        run = run_generation(corpus, strategy, config, client,
                             temperatures=temperatures,
                             framework_provider=provider)
        outputs = []
        for temp in sorted(run.corpora):
            name = f"generated_{model_tag(strategy, temp)}.jsonl"
            serialize(run.corpora[temp], out_dir / name)
            outputs.append(name)
        settings_snapshot = dict(settings)
        settings_snapshot["cache_dir"] = cache_dir
        settings_snapshot["strategy"] = strategy
        settings_snapshot["temperatures"] = temperatures
        _write_manifest(out_dir, "generate", settings_snapshot, [source],
                        outputs, started)
    for failure in run.failures:
        print(f"failed article {failure.article_id} at t={failure.temperature}: "
              f"{failure.reason}", file=sys.stderr)
    total = sum(len(c) for c in run.corpora.values())
    print(f"generated={total} failures={len(run.failures)} "
          f"temperatures={','.join(f'{t:g}' for t in sorted(run.corpora))}")
    return EXIT_OK


def _vocabulary_filter(value):
    if value is None:
        return None
    if value == "vader":
        return set(default_lexicon().entries)
    path = Path(value)
    if path.is_file():
        words = {line.strip().lower() for line in
                 path.read_text(encoding="utf-8").splitlines() if line.strip()}
        return words
    raise ConfigError(f"vocab filter must be 'vader' or a wordlist file: {value}")


def _dump_sentences(corpus, lexicon, rules, path) -> None:
    """Audit file: every sentence with its compound score and flipped terms."""
    with open(path, "w", encoding="utf-8") as handle:
        for article in corpus:
            scored = score_article(article, lexicon, rules)
            for i, s in enumerate(scored.sentence_scores):
                record = {"article_id": article.id, "index": i,
                          "sentence": s.text, "compound": s.compound,
                          "flipped_terms": list(s.flipped_terms)}
                handle.write(json.dumps(record, ensure_ascii=False) + "\n")


def cmd_measure(args) -> int:
    source = _require_file(args.corpus)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    settings = _settings(args, ("vocab_filter",))
    started = _utc_now()
    with _lock(out_dir):
        corpus = load_corpus(source, label=args.label)
        lexicon = default_lexicon()
        rules = () if args.no_flip_rules else DEFAULT_FLIP_RULES
        if args.tagger_cmd:
            tagger = CommandTagger(shlex.split(args.tagger_cmd))
        else:
            tagger = BuiltinTagger()
        rows = []
        failure = None
        try:
            for article in corpus:
                rows.append(measure_article(article, lexicon, rules, tagger))
        except TaggingError as exc:
            failure = exc
        finally:
            close = getattr(tagger, "close", None)
            if close is not None:
                close()
        write_measures(rows, out_dir / "measures.jsonl")
        table = build_frequency_table(
            corpus, vocabulary_filter=_vocabulary_filter(settings.get("vocab_filter")),
            label=args.label)
        write_frequency_table(table, out_dir / "frequency_table.json")
        outputs = ["measures.jsonl", "frequency_table.json"]
        if args.dump_sentences:
            _dump_sentences(corpus, lexicon, rules, out_dir / "sentences.jsonl")
            outputs.append("sentences.jsonl")
        _write_manifest(out_dir, "measure", settings, [source],
                        outputs, started)
    if failure is not None:
        print(f"tagger failed after {len(rows)} articles: {failure}",
              file=sys.stderr)
        return EXIT_RUNTIME
    print(f"measured={len(rows)} tokens={table.N}")
    return EXIT_OK


def _match_rows(corpus_a, corpus_b, rows_a, rows_b):
    """Measure-row pairs for articles sharing exact (title, description)."""
    by_id_a = {r.article_id: r for r in rows_a}
    by_id_b = {r.article_id: r for r in rows_b}
    for corpus, rows, side in ((corpus_a, by_id_a, "a"), (corpus_b, by_id_b, "b")):
        missing = [a.id for a in corpus if a.id not in rows]
        if missing:
            raise SchemaError(
                f"measures file for side {side} lacks article {missing[0]}")

    def keyed(corpus, side):
        table = {}
        for article in corpus:
            key = (article.title, article.description)
            if key in table:
                raise AmbiguityError(
                    f"duplicate (title, description) on side {side}: "
                    f"{article.title!r}")
            table[key] = article
        return table

    keyed_b = keyed(corpus_b, "b")
    keyed(corpus_a, "a")
    pairs = []
    unmatched_a = []
    for article in corpus_a:
        match = keyed_b.pop((article.title, article.description), None)
        if match is None:
            unmatched_a.append(article)
        else:
            pairs.append((by_id_a[article.id], by_id_b[match.id]))
    unmatched_b = list(keyed_b.values())
    return pairs, unmatched_a, unmatched_b


def _corpus_label(corpus, flag_value, fallback):
    if flag_value:
        return flag_value
    tags = {a.model_tag for a in corpus}
    if len(tags) == 1 and None not in tags:
        return tags.pop()
    return fallback


def cmd_compare(args) -> int:
    corpus_a_path = _require_file(args.corpus_a)
    corpus_b_path = _require_file(args.corpus_b)
    measures_a_path = _require_file(args.measures_a)
    measures_b_path = _require_file(args.measures_b)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    settings = _settings(args, ("overlap_bins", "top_k", "vocab_filter"))
    bins = settings.get("overlap_bins", 100)
    top_k = settings.get("top_k", 50)
    split = args.stage_split or DEFAULT_STAGE_SPLIT
    started = _utc_now()
    with _lock(out_dir):
        corpus_a = load_corpus(corpus_a_path)
        corpus_b = load_corpus(corpus_b_path)
        rows_a = read_measures(measures_a_path)
        rows_b = read_measures(measures_b_path)
        label_a = _corpus_label(corpus_a, args.label_a, "a")
        label_b = _corpus_label(corpus_b, args.label_b, "b")
        if label_a == label_b:
            label_a, label_b = f"{label_a}:a", f"{label_b}:b"

        pairs, unmatched_a, unmatched_b = _match_rows(
            corpus_a, corpus_b, rows_a, rows_b)
        if not pairs:
            print(f"no pairs formed: {len(unmatched_a)} unmatched on side a, "
                  f"{len(unmatched_b)} on side b", file=sys.stderr)
            for article in (unmatched_a + unmatched_b)[:5]:
                print(f"  unmatched: {article.title!r}", file=sys.stderr)
            return EXIT_RUNTIME

        reports = []
        for measure in COMPARED_MEASURES:
            dated_a = [(r.published_at, float(getattr(r, measure)))
                       for r in rows_a]
            dated_b = [(r.published_at, float(getattr(r, measure)))
                       for r in rows_b]
            paired = [(float(getattr(ra, measure)), float(getattr(rb, measure)))
                      for ra, rb in pairs]
            reports.append(compare_measure(
                measure, dated_a, dated_b, paired=paired,
                label_a=label_a, label_b=label_b, split=split, bins=bins))
        write_comparison(reports, out_dir / "comparison.json")

        weekly_a = weekly_series(
            [(r.published_at, r.mean_compound) for r in rows_a])
        weekly_b = weekly_series(
            [(r.published_at, r.mean_compound) for r in rows_b])
        write_weekly_csv(weekly_a, out_dir / "weekly_sentiment_a.csv")
        write_weekly_csv(weekly_b, out_dir / "weekly_sentiment_b.csv")

        vocabulary = _vocabulary_filter(settings.get("vocab_filter"))
        table_a = build_frequency_table(corpus_a, vocabulary, label=label_a)
        table_b = build_frequency_table(corpus_b, vocabulary, label=label_b)
        for_a, for_b = rank_keywords(table_a, table_b, top_k=top_k)
        write_keyness_csv(list(for_a) + list(for_b), out_dir / "keyness.csv")

        plot_weekly_sentiment(weekly_a, weekly_b, label_a, label_b,
                              out_dir / "sentiment_weekly.svg")
        plot_entity_means(rows_a, rows_b, label_a, label_b,
                          out_dir / "entity_means.svg")
        plot_focus_scatter(rows_a, rows_b, label_a, label_b,
                           out_dir / "focus_scatter.svg")

        outputs = ["comparison.json", "weekly_sentiment_a.csv",
                   "weekly_sentiment_b.csv", "keyness.csv",
                   "sentiment_weekly.svg", "entity_means.svg",
                   "focus_scatter.svg"]
        settings_snapshot = dict(settings)
        settings_snapshot.update({"stage_split": split.isoformat(),
                                  "label_a": label_a, "label_b": label_b,
                                  "overlap_bins": bins, "top_k": top_k})
        _write_manifest(out_dir, "compare", settings_snapshot,
                        [corpus_a_path, corpus_b_path, measures_a_path,
                         measures_b_path], outputs, started)
    sentiment = reports[0]
    d = "n/a" if sentiment.cohen_d is None else f"{sentiment.cohen_d:.4f}"
    ov = "n/a" if sentiment.overlap is None else f"{sentiment.overlap:.4f}"
    print(f"pairs={len(pairs)} unmatched_a={len(unmatched_a)} "
          f"unmatched_b={len(unmatched_b)} sentiment_d={d} overlap={ov}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cfpress",
        description="Compare real news coverage with generated counterparts.")
    parser.add_argument("--version", action="version",
                        version=f"cfpress {cfpress.__version__}")
    sub = parser.add_subparsers(dest="command")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML settings file")

    p_ingest = sub.add_parser("ingest", parents=[common],
                              help="read, clean, and deduplicate a corpus")
    p_ingest.add_argument("--input", required=True)
    p_ingest.add_argument("--format", choices=sorted(INGEST_FORMATS),
                          required=True)
    p_ingest.add_argument("--out", required=True,
                          help="corpus JSONL output path")
    p_ingest.add_argument("--label", default="")
    p_ingest.set_defaults(func=cmd_ingest)

    p_gen = sub.add_parser("generate", parents=[common],
                           help="generate a counterfactual corpus")
    p_gen.add_argument("--corpus", required=True)
    p_gen.add_argument("--out-dir", required=True)
    p_gen.add_argument("--endpoint")
    p_gen.add_argument("--model")
    p_gen.add_argument("--strategy",
                       choices=("standard", "static", "rolling"))
    p_gen.add_argument("--temperature", type=float)
    p_gen.add_argument("--temperatures", type=_parse_temperatures,
                       help="comma-separated list, e.g. 0.1,0.5,1.0")
    p_gen.add_argument("--max-tokens", type=int, dest="max_tokens")
    p_gen.add_argument("--max-in-flight", type=int, dest="max_in_flight")
    p_gen.add_argument("--retry-attempts", type=int, dest="retry_attempts")
    p_gen.add_argument("--retry-backoff", type=float, dest="retry_backoff")
    p_gen.add_argument("--cache-dir", dest="cache_dir")
    p_gen.add_argument("--framework-file",
                       help="JSON snapshot used for every article")
    p_gen.add_argument("--framework-url",
                       help="live page whose dated snapshots provide context")
    p_gen.add_argument("--framework-as-of", type=_parse_date)
    p_gen.set_defaults(func=cmd_generate)

    p_measure = sub.add_parser("measure", parents=[common],
                               help="per-article sentiment, entities, focus")
    p_measure.add_argument("--corpus", required=True)
    p_measure.add_argument("--out-dir", required=True)
    p_measure.add_argument("--label", default="")
    p_measure.add_argument("--no-flip-rules", action="store_true")
    p_measure.add_argument("--dump-sentences", action="store_true",
                           dest="dump_sentences",
                           help="also write per-sentence scores for auditing")
    p_measure.add_argument("--tagger-cmd",
                           help="external line-pipe tagger command")
    p_measure.add_argument("--vocab-filter", dest="vocab_filter",
                           help="'vader' or a wordlist file")
    p_measure.set_defaults(func=cmd_measure)

    p_cmp = sub.add_parser("compare", parents=[common],
                           help="compare two measured corpora")
    p_cmp.add_argument("--corpus-a", required=True)
    p_cmp.add_argument("--measures-a", required=True)
    p_cmp.add_argument("--corpus-b", required=True)
    p_cmp.add_argument("--measures-b", required=True)
    p_cmp.add_argument("--out-dir", required=True)
    p_cmp.add_argument("--label-a")
    p_cmp.add_argument("--label-b")
    p_cmp.add_argument("--stage-split", type=_parse_date)
    p_cmp.add_argument("--bins", type=int, dest="overlap_bins")
    p_cmp.add_argument("--top-k", type=int, dest="top_k")
    p_cmp.add_argument("--vocab-filter", dest="vocab_filter")
    p_cmp.set_defaults(func=cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "func"):
        parser.print_help()
        return EXIT_USAGE
    try:
        return args.func(args)
    except (SchemaError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: missing file: {exc.filename or exc}", file=sys.stderr)
        return EXIT_USAGE
    except Timeout:
        print("error: output directory is locked by another run",
              file=sys.stderr)
        return EXIT_RUNTIME
    except CfpressError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
