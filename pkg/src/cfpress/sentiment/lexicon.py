"""Valence lexicon loading.

The packaged lexicon is the VADER word list (C.J. Hutto, MIT licence): one
token per line as ``token<TAB>mean<TAB>stddev<TAB>ratings``. Only the token
and the mean valence are used for scoring.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

from cfpress.errors import ConfigError

LEXICON_RESOURCE = "vader_lexicon.txt"


@dataclass(frozen=True)
class SentimentLexicon:
    """Case-insensitive token-to-valence table."""

    entries: dict[str, float]
    source_version: str = "vader-3.3.2"

    def __post_init__(self):
        if not self.entries:
            raise ConfigError("sentiment lexicon is empty")

    def __contains__(self, token: str) -> bool:
        return token.lower() in self.entries

    def valence(self, token: str) -> float:
        """Mean valence for a token, 0.0 when unknown."""
        return self.entries.get(token.lower(), 0.0)


def parse_lexicon(text: str, source_version: str = "custom") -> SentimentLexicon:
    """Parse tab-separated ``token<TAB>mean`` lines into a lexicon."""
    entries = {}
    for line in text.rstrip("\n").split("\n"):
        if not line:
            continue
        token, measure = line.strip().split("\t")[0:2]
        entries[token] = float(measure)
    return SentimentLexicon(entries=entries, source_version=source_version)


def load_lexicon(path: str) -> SentimentLexicon:
    """Load a lexicon from a file path."""
    with open(path, encoding="utf-8") as handle:
        return parse_lexicon(handle.read(), source_version=path)


def default_lexicon() -> SentimentLexicon:
    """Load the lexicon shipped with the package."""
    data = resources.files("cfpress.sentiment").joinpath("data", LEXICON_RESOURCE)
    return parse_lexicon(data.read_text(encoding="utf-8"), source_version="vader-3.3.2")
