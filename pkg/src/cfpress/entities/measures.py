"""Entity tallies and the focus ratio e/l."""

from __future__ import annotations

from dataclasses import dataclass

from cfpress.entities.tagger import KINDS, word_tokens
from cfpress.errors import UndefinedFocusError


@dataclass(frozen=True)
class EntityTally:
    """Per-kind mention counts plus the focus ingredients e and l."""

    article_id: str
    counts: dict
    unique_entities: int
    token_length: int


@dataclass(frozen=True)
class FocusValue:
    article_id: str
    focus: float


def _normalize_surface(surface: str) -> str:
    return " ".join(surface.split()).casefold()


def tally(article, mentions) -> EntityTally:
    """Count mentions per kind; e pools distinct normalized surfaces across kinds."""
    counts = {kind: 0 for kind in KINDS}
    surfaces = set()
    for m in mentions:
        counts[m.kind] += 1
        surfaces.add(_normalize_surface(m.surface))
    return EntityTally(
        article_id=article.id,
        counts=counts,
        unique_entities=len(surfaces),
        token_length=len(word_tokens(article.body)),
    )


def focus(t: EntityTally) -> FocusValue:
    """focus = e / l; exactly 0 when there are no entities."""
    if t.token_length < 1:
        raise UndefinedFocusError(
            f"focus undefined for zero-length body (article {t.article_id})")
    return FocusValue(article_id=t.article_id,
                      focus=t.unique_entities / t.token_length)


def tally_record(t: EntityTally) -> dict:
    """Tally plus focus as a flat dict for JSONL output."""
    return {
        "article_id": t.article_id,
        "person": t.counts.get("person", 0),
        "gpe": t.counts.get("gpe", 0),
        "org": t.counts.get("org", 0),
        "unique_entities": t.unique_entities,
        "token_length": t.token_length,
        "focus": focus(t).focus,
    }
