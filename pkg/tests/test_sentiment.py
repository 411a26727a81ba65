"""Compound scoring, the sentence splitter, and valence flip rules."""

import json
import random

import pytest

from conftest import FIXTURES, make_article
from cfpress.errors import CfpressError
from cfpress.sentiment import (
    DEFAULT_FLIP_RULES,
    FlipRule,
    SentimentLexicon,
    default_lexicon,
    parse_lexicon,
    score_article,
    score_sentence,
    scoring_tokens,
    split_sentences,
)

LEXICON = default_lexicon()

GOLDENS = [
    ("Thousands of cyclists pedalled along empty Toronto highways today, "
     "enjoying the good weather and raising money for charity.", 0.8074),
    ("'They're good at running them and we have to create the right "
     "environment for them,' she said.", 0.6124),
    ("She said it's not good enough to say there's a strategy — that the "
     "province needs a strategy in action.", -0.3412),
    ("Transportation Minister Clare Trevena said the incident is 'obviously' "
     "worrisome.", -0.4019),
]


@pytest.mark.parametrize("sentence,expected", GOLDENS)
def test_golden_sentences(sentence, expected):
    got = score_sentence(sentence, LEXICON, rules=()).compound
    assert got == pytest.approx(expected, abs=0.001)


def test_reference_parity_fixture():
    rows = json.loads((FIXTURES / "sentiment_parity_200.json").read_text())
    assert len(rows) == 200
    for row in rows:
        got = score_sentence(row["text"], LEXICON, rules=()).compound
        assert got == pytest.approx(row["compound"], abs=0.0005), row["text"]


def test_compound_bounds():
    cases = [
        "GREAT GREAT GREAT GREAT great!!!! So so so amazing!!!",
        "horrible terrible awful disgusting catastrophe!!!???",
        "not not not no never good bad great?!?!?!",
        "", "   ", "12345 67890 --- ???",
    ]
    for text in cases:
        compound = score_sentence(text, LEXICON, rules=()).compound
        assert -1.0 <= compound <= 1.0


def test_tokenizer_keeps_short_raw_tokens():
    # tokens whose stripped form is <= 2 chars stay raw (emoticon rule)
    assert scoring_tokens("Go on... a :) day.") == ["Go", "on...", "a", ":)", "day"]


def test_split_sentences_basic():
    body = "First part ends. Second part follows! Third asks? Yes."
    parts = split_sentences(body)
    assert len(parts) == 4
    assert parts[0].strip() == "First part ends."


def test_split_sentences_abbreviations_and_initials():
    body = "Dr. Smith arrived at 3 p.m. on Tuesday. J. K. Rowling was cited."
    parts = split_sentences(body)
    assert len(parts) == 2
    body2 = "The U.S. economy grew. Mr. Lee disagreed."
    assert len(split_sentences(body2)) == 2


def test_split_sentences_absorbs_closing_quotes():
    body = "\"It is done.\" She left. 'Quite so.' He stayed."
    parts = [p.strip() for p in split_sentences(body)]
    assert parts[0] == '"It is done."'
    assert len(parts) == 4


def test_flip_rule_inverts_trigger_window():
    flipped = score_sentence("She tested positive for the virus.", LEXICON,
                             rules=DEFAULT_FLIP_RULES).compound
    plain = score_sentence("She tested positive for the virus.", LEXICON,
                           rules=()).compound
    assert flipped == pytest.approx(-plain)
    assert flipped < 0 < plain


def test_flip_rule_negative_result_reads_positive():
    sentence = "She tested negative for the virus."
    flipped = score_sentence(sentence, LEXICON, rules=DEFAULT_FLIP_RULES).compound
    plain = score_sentence(sentence, LEXICON, rules=()).compound
    assert flipped == pytest.approx(-plain)
    assert flipped == pytest.approx(0.5719, abs=0.0005)


def test_flip_rule_window_radius():
    inside = score_sentence("The patient tested clearly positive today.",
                            LEXICON, rules=DEFAULT_FLIP_RULES)
    assert inside.flipped_terms and inside.flipped_terms[0][0] == "positive"
    outside = score_sentence("The test found the swab sample positive.",
                             LEXICON, rules=DEFAULT_FLIP_RULES)
    assert outside.flipped_terms == ()


def test_flip_rule_records_flipped_terms():
    score = score_sentence("He tested positive.", LEXICON,
                           rules=DEFAULT_FLIP_RULES)
    assert [t for t, _ in score.flipped_terms] == ["positive"]


def test_flip_rule_custom_target():
    rule = FlipRule(target="happy", triggers=frozenset({"quarantine"}),
                    window=1)
    flipped = score_sentence("The quarantine happy crowd left.", LEXICON,
                             rules=(rule,)).compound
    plain = score_sentence("The quarantine happy crowd left.", LEXICON,
                           rules=()).compound
    assert flipped == pytest.approx(-plain)


def test_flip_rule_validation():
    with pytest.raises(CfpressError):
        FlipRule(target="good", window=0)
    with pytest.raises(CfpressError):
        FlipRule(target="good", action="boost")
    rule = FlipRule(target="GOOD", triggers=frozenset({"Trial"}))
    assert rule.target == "good"
    assert rule.triggers == frozenset({"trial"})


def test_score_article_mean_and_count():
    art = make_article(body="This is wonderful news. The weather was plain. "
                            "The crash was horrible.")
    result = score_article(art, LEXICON, rules=())
    assert result.n_sentences == 3
    assert result.article_id == art.id
    per = [s.compound for s in result.sentence_scores]
    assert result.mean_compound == pytest.approx(sum(per) / 3)
    skipped = score_article(art, LEXICON, rules=(), skip_neutral=True)
    nonzero = [c for c in per if c != 0.0]
    assert skipped.mean_compound == pytest.approx(sum(nonzero) / len(nonzero))


def test_lexicon_parse_and_lookup():
    text = "good\t1.9\t0.5\t[2, 2, 1]\nbad\t-2.5\t0.6\t[-3, -2]\n"
    lex = parse_lexicon(text, source_version="test")
    assert isinstance(lex, SentimentLexicon)
    assert "good" in lex and lex.valence("good") == pytest.approx(1.9)
    assert lex.valence("bad") == pytest.approx(-2.5)
    assert "missing" not in lex


def test_default_lexicon_loaded():
    assert LEXICON.source_version == "vader-3.3.2"
    assert LEXICON.valence("great") > 0 > LEXICON.valence("terrible")
    assert len(LEXICON.entries) > 7000


def test_random_text_never_crashes():
    rng = random.Random(7)
    words = ["good", "bad", "very", "not", "no", "never", "so", "but",
             "least", "kind", "of", "the", "!!!", "???", "AMAZING", "sort"]
    for _ in range(300):
        text = " ".join(rng.choice(words) for _ in range(rng.randrange(0, 12)))
        compound = score_sentence(text, LEXICON).compound
        assert -1.0 <= compound <= 1.0
