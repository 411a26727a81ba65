"""Sentence-level polarity scoring with a lexicon-and-rules engine."""

from cfpress.sentiment.engine import (
    DEFAULT_FLIP_RULES,
    ArticleSentiment,
    FlipRule,
    SentenceScore,
    score_article,
    score_sentence,
    scoring_tokens,
)
from cfpress.sentiment.lexicon import (
    SentimentLexicon,
    default_lexicon,
    load_lexicon,
    parse_lexicon,
)
from cfpress.sentiment.sentences import split_sentences

__all__ = [
    "DEFAULT_FLIP_RULES",
    "ArticleSentiment",
    "FlipRule",
    "SentenceScore",
    "SentimentLexicon",
    "default_lexicon",
    "load_lexicon",
    "parse_lexicon",
    "score_article",
    "score_sentence",
    "scoring_tokens",
    "split_sentences",
]
