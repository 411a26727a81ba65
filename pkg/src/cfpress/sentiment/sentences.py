"""Sentence splitting for news bodies."""

from __future__ import annotations

TERMINATORS = ".!?"
CLOSERS = "\"'’”)]"

ABBREVIATIONS = frozenset({
    "dr.", "mr.", "mrs.", "ms.", "prof.", "rev.", "fr.", "hon.",
    "gen.", "gov.", "sen.", "rep.", "sgt.", "capt.", "col.", "lt.", "cmdr.", "maj.",
    "st.", "mt.", "ft.", "ave.", "blvd.", "rd.",
    "u.s.", "u.s.a.", "u.k.", "u.n.", "e.u.", "b.c.", "d.c.",
    "a.m.", "p.m.", "a.d.",
    "no.", "vs.", "v.", "etc.", "e.g.", "i.e.", "cf.", "al.",
    "inc.", "ltd.", "co.", "corp.", "dept.", "est.",
    "jan.", "feb.", "mar.", "apr.", "jun.", "jul.", "aug.",
    "sep.", "sept.", "oct.", "nov.", "dec.",
    "jr.", "sr.", "ph.d.", "m.d.", "b.a.", "m.a.",
})


def _preceding_word(text: str, end: int) -> str:
    """The whitespace-delimited word ending at index `end` (inclusive)."""
    start = end
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    return text[start:end + 1]


def _suppresses_split(text: str, dot: int, abbreviations) -> bool:
    """True when the period at `dot` belongs to an abbreviation or initial."""
    word = _preceding_word(text, dot).lstrip("\"'‘“([")
    low = word.lower()
    if low in abbreviations:
        return True
    alpha = [c for c in word if c.isalpha()]
    # single-letter initials such as the F. in John F. Kennedy
    return len(alpha) == 1 and word.endswith(".")


def split_sentences(body: str, abbreviations=ABBREVIATIONS) -> list:
    """Split text into sentences on terminal punctuation.

    Splits happen after a run of ``.!?`` (plus any closing quotes or
    brackets) followed by whitespace or end of text, unless the period ends
    a known abbreviation or a single-letter initial. Sentences keep their
    delimiters, so joining them recovers the input up to whitespace.
    """
    text = body.strip()
    if not text:
        return []

    sentences = []
    start = 0
    i = 0
    n = len(text)
    while i < n:
        if text[i] in TERMINATORS:
            j = i + 1
            while j < n and text[j] in TERMINATORS + CLOSERS:
                j += 1
            boundary = j >= n or text[j].isspace()
            if boundary and not (text[i] == "." and _suppresses_split(text, i, abbreviations)):
                chunk = text[start:j].strip()
                if chunk:
                    sentences.append(chunk)
                while j < n and text[j].isspace():
                    j += 1
                start = j
                i = j
                continue
            i = j
            continue
        i += 1

    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences
