"""Prompt assembly, archive snapshots, and completion-endpoint generation."""

from cfpress.simulate.generation import (
    CompletionCache,
    GenerationConfig,
    GenerationFailure,
    GenerationRun,
    HttpCompletionClient,
    generate_article,
    run_generation,
)
from cfpress.simulate.prompts import (
    STRATEGIES,
    PromptRecord,
    build_prompt,
    extract_body,
    model_tag,
    parse_record,
    serialize_open,
    serialize_record,
)
from cfpress.simulate.wayback import (
    FrameworkCache,
    FrameworkSnapshot,
    SnapshotRef,
    WaybackClient,
    extract_description,
    fetch_framework,
    select_snapshot,
)

__all__ = [
    "STRATEGIES",
    "CompletionCache",
    "FrameworkCache",
    "FrameworkSnapshot",
    "GenerationConfig",
    "GenerationFailure",
    "GenerationRun",
    "HttpCompletionClient",
    "PromptRecord",
    "SnapshotRef",
    "WaybackClient",
    "build_prompt",
    "extract_body",
    "extract_description",
    "fetch_framework",
    "generate_article",
    "model_tag",
    "parse_record",
    "run_generation",
    "select_snapshot",
    "serialize_open",
    "serialize_record",
]
