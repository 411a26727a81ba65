"""The dictionary prompt grammar shared by generation and fine-tuning.

A record is a single line shaped like a Python dict literal with
single-quoted keys and values:

    {'title': 'T', 'description': 'D', 'framework': 'F', 'text': 'BODY'}

Key order is fixed: title, description, optional framework, then text. A
generation prompt is the same string cut open after ``'text': '`` so the
completion continues inside the text value. Backslashes, single quotes, and
newline/carriage-return/tab characters are escaped inside values.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import timedelta

from cfpress.errors import MissingFrameworkError, PromptError

STRATEGIES = ("standard", "static", "rolling")
STRATEGY_MODEL_NUMBERS = {"standard": 1, "static": 2, "rolling": 3}
DEFAULT_SNAPSHOT_WINDOW_DAYS = 14

_ESCAPES = [("\\", "\\\\"), ("'", "\\'"), ("\n", "\\n"), ("\r", "\\r"), ("\t", "\\t")]
_UNESCAPES = {"\\": "\\", "'": "'", "n": "\n", "r": "\r", "t": "\t"}


@dataclass(frozen=True)
class PromptRecord:
    """A serialized generation request for one article."""

    article_id: str
    strategy: str
    dictionary: dict
    serialized: str


def escape_value(value: str) -> str:
    for raw, escaped in _ESCAPES:
        value = value.replace(raw, escaped)
    return value


def unescape_value(value: str) -> str:
    out = []
    i = 0
    while i < len(value):
        ch = value[i]
        if ch == "\\" and i + 1 < len(value) and value[i + 1] in _UNESCAPES:
            out.append(_UNESCAPES[value[i + 1]])
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def serialize_record(dictionary: dict) -> str:
    """Full record text, closed with '}."""
    parts = [f"'{escape_value(k)}': '{escape_value(v)}'"
             for k, v in dictionary.items()]
    return "{" + ", ".join(parts) + "}"


def serialize_open(dictionary: dict) -> str:
    """Prompt text: the record cut open after the text key's opening quote."""
    closed = serialize_record({**dictionary, "text": ""})
    # drop the closing quote and brace of the empty text value
    assert closed.endswith("''}")
    return closed[:-2]


def parse_record(text: str) -> dict:
    """Parse a record (closed or cut-open form) back into its dictionary.

    Raises PromptError on grammar violations.
    """
    def fail(msg):
        raise PromptError(f"bad prompt record: {msg}")

    if not text.startswith("{"):
        fail("expected '{'")
    i = 1
    entries = {}
    n = len(text)
    while True:
        while i < n and text[i] == " ":
            i += 1
        if i >= n:
            fail("unterminated record")
        if text[i] == "}":
            break
        key, i = _read_quoted(text, i, fail)
        if not text.startswith(": ", i):
            fail(f"expected \": \" after key {key!r}")
        i += 2
        if i >= n or text[i] != "'":
            fail(f"expected quoted value for key {key!r}")
        if i == n - 1:
            # cut-open prompt: trailing "'" starts an empty value
            entries[key] = ""
            return entries
        value, i = _read_quoted(text, i, fail)
        entries[key] = value
        if i < n and text[i] == ",":
            i += 1
            continue
        if i < n and text[i] == "}":
            break
        fail("expected ',' or '}' after value")
    return entries


def _read_quoted(text: str, i: int, fail):
    """Read a quoted, escaped string starting at text[i] == "'"."""
    if text[i] != "'":
        fail("expected opening quote")
    i += 1
    out = []
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\\" and i + 1 < n and text[i + 1] in _UNESCAPES:
            out.append(_UNESCAPES[text[i + 1]])
            i += 2
            continue
        if ch == "'":
            return "".join(out), i + 1
        out.append(ch)
        i += 1
    fail("unterminated quoted string")


def extract_body(completion: str) -> str:
    """Completion text up to the first unescaped '} delimiter, unescaped.

    Without a delimiter the whole completion is the body.
    """
    i = 0
    n = len(completion)
    while i < n:
        ch = completion[i]
        if ch == "\\" and i + 1 < n:
            i += 2
            continue
        if ch == "'" and i + 1 < n and completion[i + 1] == "}":
            return unescape_value(completion[:i])
        i += 1
    return unescape_value(completion)


def build_prompt(article, strategy: str, framework=None,
                 window_days: int = DEFAULT_SNAPSHOT_WINDOW_DAYS) -> PromptRecord:
    """Assemble the prompt dictionary for an article under one strategy.

    Standard uses title and description only. Static and rolling insert the
    framework description before the text key; rolling additionally checks
    the snapshot is dated within window_days of the article.
    """
    if strategy not in STRATEGIES:
        raise PromptError(f"unknown strategy: {strategy!r}")
    if not article.title or not article.description:
        raise PromptError(
            f"article {article.id} needs both title and description for prompting")

    dictionary = {"title": article.title, "description": article.description}
    if strategy != "standard":
        if framework is None:
            raise MissingFrameworkError(
                f"strategy {strategy!r} needs a framework snapshot")
        if strategy == "rolling":
            age = abs((article.published_at - framework.as_of).days)
            if age > window_days:
                raise MissingFrameworkError(
                    f"snapshot dated {framework.as_of} is {age} days from "
                    f"article date {article.published_at} (window {window_days})")
        dictionary["framework"] = framework.description
    dictionary["text"] = ""

    return PromptRecord(
        article_id=article.id,
        strategy=strategy,
        dictionary=dictionary,
        serialized=serialize_open(dictionary),
    )


def model_tag(strategy: str, temperature: float) -> str:
    """Tag like model3-t0.50 identifying strategy and temperature."""
    if strategy not in STRATEGY_MODEL_NUMBERS:
        raise PromptError(f"unknown strategy: {strategy!r}")
    return f"model{STRATEGY_MODEL_NUMBERS[strategy]}-t{temperature:.2f}"
