"""Rule/gazetteer entity tagging over whitespace tokens.

The builtin tagger is a deterministic baseline: gazetteer phrases for
geopolitical entities and organizations, corporate-suffix and "Ministry of"
rules, acronym lookups, and honorific-cued or consecutive-capitalized name
detection for people. A statistical tagger can replace it through the
exchange protocol in cfpress.entities.exchange.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from importlib import resources

from cfpress.errors import TaggingError

KINDS = ("person", "gpe", "org")

ORG_SUFFIXES = frozenset({"Inc", "Corp", "Ltd", "Co", "LLC", "PLC"})
HONORIFICS = (
    ("Prime", "Minister"),
    ("Deputy", "Prime", "Minister"),
    ("Mr",), ("Mrs",), ("Ms",), ("Dr",), ("Prof",),
    ("President",), ("Premier",), ("Mayor",), ("Senator",), ("Minister",),
    ("Gov",), ("Gen",), ("Sgt",), ("Const",), ("Councillor",), ("Chief",),
)
# words that may open a sentence in title case without naming anything
LEADING_STOPWORDS = frozenset({
    "The", "A", "An", "In", "On", "At", "By", "For", "Of", "To", "From",
    "And", "But", "Or", "So", "If", "As", "It", "Its", "He", "She", "They",
    "We", "You", "I", "His", "Her", "Their", "Our", "Your", "My",
    "This", "That", "These", "Those", "There", "Here", "When", "While",
    "After", "Before", "Since", "Because", "Although", "Though", "However",
    "Meanwhile", "Still", "Yet", "Now", "Then", "Today", "Tomorrow",
    "Yesterday", "Some", "Many", "Most", "Any", "All", "Each", "Every",
    "Not", "No", "What", "Who", "Why", "How", "Where", "Which",
})
ACRONYM_MIN = 2
ACRONYM_MAX = 5


@dataclass(frozen=True)
class EntityMention:
    """One tagged span; span indexes the body's whitespace tokens, half-open."""

    surface: str
    kind: str
    span: tuple

    def __post_init__(self):
        if self.kind not in KINDS:
            raise TaggingError(f"unknown entity kind: {self.kind!r}")
        start, end = self.span
        if not (isinstance(start, int) and isinstance(end, int) and 0 <= start < end):
            raise TaggingError(f"invalid mention span: {self.span!r}")


def word_tokens(body: str) -> list:
    """Whitespace tokens; the denominator token count uses the same split."""
    return body.split()


def match_form(token: str) -> str:
    """Token stripped of edge punctuation and a trailing possessive."""
    stripped = token.strip(string.punctuation + "‘’“”")
    for suffix in ("'s", "’s"):
        if stripped.endswith(suffix):
            stripped = stripped[:-len(suffix)]
    return stripped


def load_gazetteer(text: str) -> list:
    """Parse one-entry-per-line gazetteer text; '#' lines are comments."""
    entries = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            entries.append(tuple(line.split()))
    return entries


def _default_entries(name: str) -> list:
    data = resources.files("cfpress.entities").joinpath("data", name) \
        .read_text(encoding="utf-8")
    return load_gazetteer(data)


def _name_like(form: str) -> bool:
    """Capitalized word with at least one lowercase letter (so not an acronym)."""
    return bool(form) and form[0].isupper() and any(c.islower() for c in form)


class BuiltinTagger:
    """Deterministic gazetteer-and-rules tagger for person/gpe/org."""

    def __init__(self, gpe_entries=None, org_entries=None):
        self.gpe_entries = list(gpe_entries) if gpe_entries is not None \
            else _default_entries("gpe.txt")
        self.org_entries = list(org_entries) if org_entries is not None \
            else _default_entries("org.txt")
        # longest phrases first so "Health Canada" wins over "Canada";
        # org before gpe on equal length
        phrases = [(entry, "org") for entry in self.org_entries]
        phrases += [(entry, "gpe") for entry in self.gpe_entries]
        self._phrases = sorted(phrases, key=lambda p: -len(p[0]))
        self._honorifics = sorted(HONORIFICS, key=len, reverse=True)

    def mentions(self, article_id: str, text: str) -> list:
        tokens = word_tokens(text)
        forms = [match_form(t) for t in tokens]
        consumed = [False] * len(tokens)
        found = []

        def take(start, end, kind):
            found.append(EntityMention(
                surface=" ".join(forms[start:end]), kind=kind, span=(start, end)))
            for k in range(start, end):
                consumed[k] = True

        self._tag_gazetteer(forms, consumed, take)
        self._tag_org_suffix(forms, consumed, take)
        self._tag_ministry(forms, consumed, take)
        self._tag_honorific_people(forms, consumed, take)
        self._tag_capitalized_people(forms, consumed, take)

        found.sort(key=lambda m: m.span)
        return found

    def _tag_gazetteer(self, forms, consumed, take):
        n = len(forms)
        i = 0
        while i < n:
            if consumed[i]:
                i += 1
                continue
            for entry, kind in self._phrases:
                k = len(entry)
                if i + k > n or any(consumed[i:i + k]):
                    continue
                if tuple(forms[i:i + k]) != entry:
                    continue
                if kind == "org" and k == 1 and entry[0].isupper():
                    # acronym entries only match short ALL-CAPS tokens
                    if not (ACRONYM_MIN <= len(entry[0]) <= ACRONYM_MAX):
                        continue
                take(i, i + k, kind)
                i += k
                break
            else:
                i += 1

    def _tag_org_suffix(self, forms, consumed, take):
        for i, form in enumerate(forms):
            if consumed[i] or form not in ORG_SUFFIXES:
                continue
            start = i
            while start > 0 and not consumed[start - 1] \
                    and (_name_like(forms[start - 1]) or forms[start - 1].isupper()):
                start -= 1
            if start < i:
                take(start, i + 1, "org")

    def _tag_ministry(self, forms, consumed, take):
        n = len(forms)
        for i, form in enumerate(forms):
            if consumed[i] or form not in ("Ministry", "Department"):
                continue
            if i + 2 >= n or forms[i + 1] != "of" or consumed[i + 1]:
                continue
            end = i + 2
            while end < n and not consumed[end] and _name_like(forms[end]):
                end += 1
            if end > i + 2:
                take(i, end, "org")

    def _match_honorific(self, forms, consumed, i):
        for phrase in self._honorifics:
            k = len(phrase)
            if tuple(forms[i:i + k]) == phrase and not any(consumed[i:i + k]):
                return k
        return 0

    def _tag_honorific_people(self, forms, consumed, take):
        n = len(forms)
        i = 0
        while i < n:
            k = self._match_honorific(forms, consumed, i)
            if not k:
                i += 1
                continue
            start = i + k
            end = start
            while end < n and not consumed[end] and _name_like(forms[end]) \
                    and forms[end] not in LEADING_STOPWORDS:
                end += 1
            if end > start:
                take(start, end, "person")
                i = end
            else:
                i += k

    def _tag_capitalized_people(self, forms, consumed, take):
        n = len(forms)
        i = 0
        while i < n:
            if consumed[i] or not _name_like(forms[i]) or forms[i] in LEADING_STOPWORDS \
                    or self._match_honorific(forms, consumed, i):
                i += 1
                continue
            end = i + 1
            while end < n and not consumed[end] and _name_like(forms[end]) \
                    and forms[end] not in LEADING_STOPWORDS \
                    and not self._match_honorific(forms, consumed, end):
                end += 1
            if end - i >= 2:
                take(i, end, "person")
            i = end

    # skipped single capitalized words are not entities under builtin rules


def tag(article, tagger) -> list:
    """Run a tagger over an article body and validate the mentions."""
    mentions = tagger.mentions(article.id, article.body)
    bound = len(word_tokens(article.body))
    for m in mentions:
        if m.kind not in KINDS:
            raise TaggingError(f"unknown entity kind: {m.kind!r}")
        if not (0 <= m.span[0] < m.span[1] <= bound):
            raise TaggingError(
                f"mention span {m.span} outside article token bounds (0, {bound})")
    return list(mentions)
