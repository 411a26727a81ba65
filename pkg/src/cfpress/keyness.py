"""Log-likelihood keyness between two corpora.

Word counts come from case-folded scoring tokens (the same tokenizer the
sentiment engine uses). Expected frequencies follow E_i = N_i * sum(O) /
sum(N) and keyness is LL = 2 * sum(O_i * ln(O_i / E_i)) with 0 ln 0 = 0.
An optional vocabulary filter restricts both the counts and the totals N to
the filter members.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from cfpress.errors import UndefinedKeynessError
from cfpress.sentiment.engine import scoring_tokens


@dataclass(frozen=True)
class FrequencyTable:
    """Observed word counts O and token total N for one corpus."""

    corpus_label: str
    N: int
    counts: dict


@dataclass(frozen=True)
class KeynessEntry:
    """Observed/expected counts and log-likelihood for one word."""

    word: str
    O: tuple
    E: tuple
    LL: float
    favored: str


def count_tokens(body: str) -> Counter:
    """Case-folded scoring-token counts for one body."""
    return Counter(tok.lower() for tok in scoring_tokens(body))


def build_frequency_table(corpus, vocabulary_filter=None, label=None) -> FrequencyTable:
    """Count words over all bodies; with a filter, N is the filtered total."""
    counts = Counter()
    for article in corpus:
        counts.update(count_tokens(article.body))
    if vocabulary_filter is not None:
        allowed = set(vocabulary_filter)
        counts = Counter({w: c for w, c in counts.items() if w in allowed})
    if label is None:
        label = getattr(corpus, "label", "") or ""
    return FrequencyTable(corpus_label=label, N=sum(counts.values()),
                          counts=dict(counts))


def expected_frequencies(word: str, table_a: FrequencyTable,
                         table_b: FrequencyTable) -> tuple:
    """E_i = N_i * (O_a + O_b) / (N_a + N_b)."""
    total_n = table_a.N + table_b.N
    if total_n == 0:
        raise UndefinedKeynessError("both corpora are empty")
    total_o = table_a.counts.get(word, 0) + table_b.counts.get(word, 0)
    return (table_a.N * total_o / total_n, table_b.N * total_o / total_n)


def log_likelihood(word: str, table_a: FrequencyTable,
                   table_b: FrequencyTable) -> KeynessEntry:
    """Keyness of one word across the two tables.

    favored is the corpus with the higher relative frequency O/N, empty when
    the rates are equal.
    """
    o = (table_a.counts.get(word, 0), table_b.counts.get(word, 0))
    if o[0] + o[1] == 0:
        raise UndefinedKeynessError(f"word absent from both corpora: {word!r}")
    e = expected_frequencies(word, table_a, table_b)
    ll = 2.0 * sum(oi * math.log(oi / ei) for oi, ei in zip(o, e) if oi > 0)
    # the exact value is >= 0; rounding can leave a tiny negative residue
    ll = max(ll, 0.0)

    # compare O_a/N_a with O_b/N_b by integer cross-multiplication (exact);
    # an empty corpus cannot favor a word
    left = o[0] * table_b.N
    right = o[1] * table_a.N
    if table_a.N == 0:
        favored = table_b.corpus_label
    elif table_b.N == 0:
        favored = table_a.corpus_label
    elif left > right:
        favored = table_a.corpus_label
    elif right > left:
        favored = table_b.corpus_label
    else:
        favored = ""
    return KeynessEntry(word=word, O=o, E=e, LL=ll, favored=favored)


def rank_keywords(table_a: FrequencyTable, table_b: FrequencyTable,
                  top_k=None) -> tuple:
    """Two descending-LL keyword lists, one per favored corpus.

    Words with LL 0 favor neither side and appear in neither list. Ties
    break by descending observed count in the favored corpus, then word.
    """
    if table_a.corpus_label == table_b.corpus_label:
        raise UndefinedKeynessError("ranking needs tables with distinct labels")
    vocabulary = set(table_a.counts) | set(table_b.counts)
    for_a = []
    for_b = []
    for word in vocabulary:
        entry = log_likelihood(word, table_a, table_b)
        if entry.LL <= 0.0 or not entry.favored:
            continue
        if entry.favored == table_a.corpus_label:
            for_a.append(entry)
        else:
            for_b.append(entry)

    def order(entries, side):
        entries.sort(key=lambda en: (-en.LL, -en.O[side], en.word))
        return tuple(entries[:top_k] if top_k is not None else entries)

    return order(for_a, 0), order(for_b, 1)


def ll_summary(entries) -> dict:
    """Mean and 95th percentile of the LL values in a keyword list."""
    values = [en.LL for en in entries]
    if not values:
        return {"mean": None, "p95": None, "n": 0}
    return {
        "mean": float(np.mean(values)),
        "p95": float(np.percentile(values, 95)),
        "n": len(values),
    }
