"""Line-pipe entity tagger backed by spaCy, for cfpress measure --tagger-cmd.

Reads one JSON request per line from stdin ({"article_id", "text"}) and
answers one JSON response per line ({"article_id", "mentions"}), where each
mention carries the surface string, a kind (person/gpe/org), and a half-open
span over the text's whitespace tokens.

Usage:
    cfpress measure --corpus real.jsonl --out-dir out \
        --tagger-cmd "python repro/spacy_tagger.py --model en_core_web_sm"
"""

import argparse
import json
import sys

KIND_MAP = {"PERSON": "person", "GPE": "gpe", "ORG": "org"}


def whitespace_spans(text):
    """Character ranges of the whitespace tokens, in order."""
    spans = []
    pos = 0
    for token in text.split():
        start = text.index(token, pos)
        spans.append((start, start + len(token)))
        pos = start + len(token)
    return spans


def to_token_span(spans, start_char, end_char):
    """Smallest whitespace-token range covering [start_char, end_char)."""
    first = last = None
    for i, (s, e) in enumerate(spans):
        if e > start_char and s < end_char:
            if first is None:
                first = i
            last = i
    if first is None:
        return None
    return first, last + 1


def mentions_for(doc, spans):
    mentions = []
    for ent in doc.ents:
        kind = KIND_MAP.get(ent.label_)
        if kind is None:
            continue
        token_span = to_token_span(spans, ent.start_char, ent.end_char)
        if token_span is None:
            continue
        mentions.append({"surface": ent.text, "kind": kind,
                         "start": token_span[0], "end": token_span[1]})
    mentions.sort(key=lambda m: (m["start"], m["end"]))
    return mentions


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--model", default="en_core_web_sm",
                        help="installed spaCy pipeline name")
    args = parser.parse_args(argv)

    import spacy

    nlp = spacy.load(args.model, exclude=["parser", "lemmatizer",
                                          "tagger", "attribute_ruler"])
    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        request = json.loads(line)
        text = request["text"]
        response = {"article_id": request["article_id"],
                    "mentions": mentions_for(nlp(text), whitespace_spans(text))}
        sys.stdout.write(json.dumps(response, ensure_ascii=False) + "\n")
        sys.stdout.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())
