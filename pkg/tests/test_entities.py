"""Entity tagging, tallies, focus, and the external tagger exchange."""

import json
import random
import sys

import pytest

from cfpress.entities import (
    BuiltinTagger,
    CommandTagger,
    EntityMention,
    EntityTally,
    FileExchangeTagger,
    focus,
    format_request,
    load_gazetteer,
    match_form,
    parse_response_line,
    tag,
    tally,
    tally_record,
    word_tokens,
    write_requests,
)
from cfpress.errors import TaggingError, UndefinedFocusError

from conftest import make_article, make_corpus


def mentions_of(body):
    return tag(make_article(body=body), BuiltinTagger())


def by_kind(mentions):
    out = {}
    for m in mentions:
        out.setdefault(m.kind, []).append(m.surface)
    return out


def test_trudeau_sentence():
    found = by_kind(mentions_of(
        "Prime Minister Justin Trudeau met the World Health Organization in Ottawa."))
    assert found == {
        "person": ["Justin Trudeau"],
        "org": ["World Health Organization"],
        "gpe": ["Ottawa"],
    }


def test_empty_text_yields_no_mentions():
    assert BuiltinTagger().mentions("x", "") == []


def test_lowercase_text_yields_no_mentions():
    assert BuiltinTagger().mentions("x", "canada is nice") == []


def test_gazetteer_longest_phrase_wins():
    found = by_kind(mentions_of("Health Canada issued new guidance."))
    assert found == {"org": ["Health Canada"]}


def test_org_suffix_rule():
    found = by_kind(mentions_of("Shares of Maple Logistics Ltd fell sharply."))
    assert found["org"] == ["Maple Logistics Ltd"]


def test_ministry_rule():
    found = by_kind(mentions_of("The Ministry of Transportation closed the road."))
    assert found["org"] == ["Ministry of Transportation"]


def test_acronym_needs_gazetteer_entry():
    found = by_kind(mentions_of("The WHO and the XYZQ met."))
    assert found == {"org": ["WHO"]}


def test_honorific_person():
    found = by_kind(mentions_of("Dr. Amy Chen answered questions."))
    assert found["person"] == ["Amy Chen"]


def test_consecutive_capitalized_person():
    found = by_kind(mentions_of("Officials said Dana Smith left early."))
    assert found["person"] == ["Dana Smith"]


def test_single_capitalized_word_not_person():
    assert mentions_of("Officials praised Smith repeatedly.") == []


def test_builtin_determinism():
    text = "Premier Jason Kenney said Alberta and Health Canada would help."
    assert BuiltinTagger().mentions("x", text) == BuiltinTagger().mentions("x", text)


def test_mention_spans_index_whitespace_tokens():
    body = "Justin Trudeau visited Ottawa today."
    tokens = word_tokens(body)
    for m in mentions_of(body):
        start, end = m.span
        assert " ".join(match_form(t) for t in tokens[start:end]) == m.surface


def test_mention_validation():
    with pytest.raises(TaggingError):
        EntityMention(surface="x", kind="animal", span=(0, 1))
    with pytest.raises(TaggingError):
        EntityMention(surface="x", kind="person", span=(2, 2))
    with pytest.raises(TaggingError):
        EntityMention(surface="x", kind="person", span=(-1, 1))


def test_tag_rejects_out_of_bounds_span():
    class Wild:
        def mentions(self, article_id, text):
            return [EntityMention(surface="x", kind="person", span=(0, 99))]

    with pytest.raises(TaggingError):
        tag(make_article(body="Two words."), Wild())


def test_tally_set_semantics():
    article = make_article(body="Canada praised Canada while Trudeau watched.")
    mentions = [
        EntityMention(surface="Canada", kind="gpe", span=(0, 1)),
        EntityMention(surface="Canada", kind="gpe", span=(2, 3)),
        EntityMention(surface="Trudeau", kind="person", span=(4, 5)),
    ]
    t = tally(article, mentions)
    assert t.counts == {"person": 1, "gpe": 2, "org": 0}
    assert t.unique_entities == 2
    assert t.token_length == 6


def test_tally_normalizes_surfaces():
    article = make_article(body="word " * 10)
    mentions = [
        EntityMention(surface="Health  Canada", kind="org", span=(0, 2)),
        EntityMention(surface="health canada", kind="org", span=(3, 5)),
    ]
    assert tally(article, mentions).unique_entities == 1


def test_tally_no_mentions_long_body():
    article = make_article(body=" ".join(f"w{i}" for i in range(100)))
    t = tally(article, [])
    assert t.counts == {"person": 0, "gpe": 0, "org": 0}
    assert t.unique_entities == 0
    assert t.token_length == 100


def test_focus_examples():
    assert focus(EntityTally("a", {}, 10, 660)).focus == pytest.approx(
        0.015151515151515152, abs=1e-12)
    assert focus(EntityTally("a", {}, 0, 512)).focus == 0.0
    assert focus(EntityTally("a", {}, 3, 100)).focus == pytest.approx(0.03)


def test_focus_zero_length_body():
    with pytest.raises(UndefinedFocusError):
        focus(EntityTally("a", {}, 0, 0))


def test_focus_monotonicity():
    # entity-free padding grows l only; a new 1-token entity grows both e and l
    assert focus(EntityTally("a", {}, 5, 60)).focus \
        > focus(EntityTally("a", {}, 5, 80)).focus
    assert focus(EntityTally("a", {}, 6, 61)).focus \
        > focus(EntityTally("a", {}, 5, 60)).focus


def test_focus_monotonicity_through_tagger():
    base = "Justin Trudeau spoke briefly."
    padded = base + " and then everyone went home without further comment"
    tagger = BuiltinTagger()

    def measure(body):
        article = make_article(body=body)
        return focus(tally(article, tag(article, tagger))).focus

    assert measure(base) > measure(padded) > 0.0


def test_focus_in_unit_interval_randomized():
    rng = random.Random(7)
    pool = ["Justin", "Trudeau", "Canada", "Ottawa", "WHO", "Health",
            "said", "the", "on", "Monday", "officials", "met", "today.",
            "Ministry", "of", "Transportation", "Dr.", "Amy", "Chen"]
    tagger = BuiltinTagger()
    for _ in range(200):
        body = " ".join(rng.choice(pool) for _ in range(rng.randint(1, 40)))
        article = make_article(body=body)
        t = tally(article, tag(article, tagger))
        value = focus(t).focus
        assert 0.0 <= value <= 1.0
        assert t.unique_entities <= sum(t.counts.values())


def test_tally_record_shape():
    article = make_article(body="Justin Trudeau visited Ottawa today.")
    record = tally_record(tally(article, mentions_of(article.body)))
    assert record == {
        "article_id": article.id,
        "person": 1, "gpe": 1, "org": 0,
        "unique_entities": 2, "token_length": 5,
        "focus": pytest.approx(0.4),
    }


def test_load_gazetteer_skips_comments():
    entries = load_gazetteer("# note\nHealth Canada\n\nOttawa\n")
    assert entries == [("Health", "Canada"), ("Ottawa",)]


def test_custom_gazetteer_overrides():
    tagger = BuiltinTagger(gpe_entries=[("Gotham",)], org_entries=[])
    found = by_kind(tag(make_article(body="Gotham closed while Canada waited."),
                        tagger))
    assert found["gpe"] == ["Gotham"]
    assert "Canada" not in found.get("gpe", [])


def test_exchange_round_trip():
    line = format_request("id1", "Some text with \"quotes\" and\nnewline")
    obj = json.loads(line)
    assert obj == {"article_id": "id1",
                   "text": "Some text with \"quotes\" and\nnewline"}
    response = json.dumps({
        "article_id": "id1",
        "mentions": [{"surface": "Ottawa", "kind": "gpe", "start": 2, "end": 3}],
    })
    got_id, mentions = parse_response_line(response)
    assert got_id == "id1"
    assert mentions == [EntityMention(surface="Ottawa", kind="gpe", span=(2, 3))]


def test_parse_response_line_malformed():
    with pytest.raises(TaggingError) as exc:
        parse_response_line("not json at all")
    assert "not json at all" in str(exc.value)
    with pytest.raises(TaggingError):
        parse_response_line('{"article_id": "x"}')
    with pytest.raises(TaggingError):
        parse_response_line('{"article_id": "x", "mentions": [{"surface": "y"}]}')


def test_write_requests_order(tmp_path):
    corpus = make_corpus(["First body here.", "Second body here."])
    path = tmp_path / "requests.jsonl"
    write_requests(corpus, path)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert [json.loads(l)["text"] for l in lines] == \
        ["First body here.", "Second body here."]


def test_file_exchange_tagger(tmp_path):
    article = make_article(body="Justin Trudeau visited Ottawa today.")
    builtin = tag(article, BuiltinTagger())
    response = {
        "article_id": article.id,
        "mentions": [{"surface": m.surface, "kind": m.kind,
                      "start": m.span[0], "end": m.span[1]} for m in builtin],
    }
    path = tmp_path / "responses.jsonl"
    path.write_text(json.dumps(response) + "\n", encoding="utf-8")

    replayed = tag(article, FileExchangeTagger(path))
    assert replayed == builtin
    # tally and focus depend only on the mention list
    assert tally(article, replayed) == tally(article, builtin)


def test_file_exchange_missing_article(tmp_path):
    path = tmp_path / "responses.jsonl"
    path.write_text("", encoding="utf-8")
    with pytest.raises(TaggingError):
        FileExchangeTagger(path).mentions("nope", "text")


ECHO_TAGGER = r"""
import json, sys
for line in sys.stdin:
    req = json.loads(line)
    tokens = req["text"].split()
    mentions = []
    if tokens and tokens[0][:1].isupper():
        mentions.append({"surface": tokens[0], "kind": "person",
                         "start": 0, "end": 1})
    print(json.dumps({"article_id": req["article_id"], "mentions": mentions}),
          flush=True)
"""

WRONG_ID_TAGGER = r"""
import json, sys
for line in sys.stdin:
    json.loads(line)
    print(json.dumps({"article_id": "someone-else", "mentions": []}), flush=True)
"""


def test_command_tagger_subprocess():
    with CommandTagger([sys.executable, "-c", ECHO_TAGGER]) as tagger:
        first = tagger.mentions("a1", "Trudeau spoke.")
        second = tagger.mentions("a2", "nothing capitalized")
        assert first == [EntityMention(surface="Trudeau", kind="person",
                                       span=(0, 1))]
        assert second == []


def test_command_tagger_id_mismatch():
    with CommandTagger([sys.executable, "-c", WRONG_ID_TAGGER]) as tagger:
        with pytest.raises(TaggingError):
            tagger.mentions("a1", "Text here.")


def test_command_tagger_dead_process():
    with CommandTagger([sys.executable, "-c", "pass"]) as tagger:
        with pytest.raises(TaggingError):
            tagger.mentions("a1", "Text here.")
