"""Entity tagging, tallies, and the focus measure."""

from cfpress.entities.exchange import (
    CommandTagger,
    FileExchangeTagger,
    format_request,
    parse_response_line,
    write_requests,
)
from cfpress.entities.measures import EntityTally, FocusValue, focus, tally, tally_record
from cfpress.entities.tagger import (
    KINDS,
    BuiltinTagger,
    EntityMention,
    load_gazetteer,
    match_form,
    tag,
    word_tokens,
)

__all__ = [
    "KINDS",
    "BuiltinTagger",
    "CommandTagger",
    "EntityMention",
    "EntityTally",
    "FileExchangeTagger",
    "FocusValue",
    "focus",
    "format_request",
    "load_gazetteer",
    "match_form",
    "parse_response_line",
    "tag",
    "tally",
    "tally_record",
    "word_tokens",
    "write_requests",
]
