"""Completion-endpoint client and the generation run driver.

The wire protocol is an OpenAI-style completions POST: JSON with prompt,
temperature, and max_tokens (plus an optional model name); the response
carries the continuation in choices[0].text. Every completed request is
cached under a content hash of its payload, so an interrupted run resumes
without repeating endpoint calls and a warm-cache run needs no network.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import requests

from cfpress.corpus import Article, Corpus, article_id
from cfpress.errors import (
    ConfigError,
    GenerationError,
    MalformedResponseError,
)
from cfpress.simulate.prompts import PromptRecord, build_prompt, extract_body, model_tag


@dataclass(frozen=True)
class GenerationConfig:
    """Endpoint, sampling, concurrency, retry, and cache settings."""

    endpoint: str
    model: str | None = None
    temperature: float = 0.50
    max_tokens: int = 750
    max_in_flight: int = 4
    retry_attempts: int = 3
    retry_backoff: float = 0.5
    timeout: float = 120.0
    cache_dir: str | None = None

    def __post_init__(self):
        if self.temperature <= 0:
            raise ConfigError("temperature must be > 0")
        if self.max_tokens < 1:
            raise ConfigError("max_tokens must be >= 1")
        if self.max_in_flight < 1:
            raise ConfigError("max_in_flight must be >= 1")
        if self.retry_attempts < 1:
            raise ConfigError("retry_attempts must be >= 1")


class HttpCompletionClient:
    """POSTs completion payloads as JSON and returns the parsed response."""

    def __init__(self, endpoint: str, timeout: float = 120.0, session=None):
        self.endpoint = endpoint
        self.timeout = timeout
        self.session = session or requests.Session()

    def complete(self, payload: dict) -> dict:
        resp = self.session.post(self.endpoint, json=payload, timeout=self.timeout)
        resp.raise_for_status()
        return resp.json()


class CompletionCache:
    """Content-addressed response store with atomic writes."""

    def __init__(self, cache_dir):
        self.root = Path(cache_dir)
        self.objects = self.root / "objects"
        self.objects.mkdir(parents=True, exist_ok=True)
        self.checkpoint_path = self.root / "checkpoint.jsonl"
        self._done_lock = threading.Lock()
        self._done = None

    @staticmethod
    def key(payload: dict) -> str:
        canon = json.dumps(payload, sort_keys=True, ensure_ascii=False)
        return hashlib.sha256(canon.encode("utf-8")).hexdigest()

    def _path(self, key: str) -> Path:
        return self.objects / f"{key}.json"

    def get(self, key: str):
        path = self._path(key)
        if not path.exists():
            return None
        return json.loads(path.read_text(encoding="utf-8"))

    def put(self, key: str, request: dict, response: dict) -> None:
        record = {"request": request, "response": response}
        fd, tmp = tempfile.mkstemp(dir=self.objects, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                json.dump(record, handle, ensure_ascii=False)
            os.replace(tmp, self._path(key))
        finally:
            if os.path.exists(tmp):
                os.unlink(tmp)

    def _load_done(self) -> set:
        if self._done is None:
            done = set()
            if self.checkpoint_path.exists():
                for line in self.checkpoint_path.read_text(encoding="utf-8").splitlines():
                    if line.strip():
                        obj = json.loads(line)
                        done.add((obj["article_id"], obj["model_tag"]))
            self._done = done
        return self._done

    def mark_done(self, article_id: str, tag: str) -> None:
        """Append to the checkpoint after the cache write has committed."""
        with self._done_lock:
            done = self._load_done()
            if (article_id, tag) in done:
                return
            with open(self.checkpoint_path, "a", encoding="utf-8") as handle:
                handle.write(json.dumps({"article_id": article_id, "model_tag": tag}) + "\n")
            done.add((article_id, tag))

    def completed(self) -> set:
        with self._done_lock:
            return set(self._load_done())


def _payload(prompt: PromptRecord, config: GenerationConfig, temperature: float) -> dict:
    payload = {
        "prompt": prompt.serialized,
        "temperature": temperature,
        "max_tokens": config.max_tokens,
    }
    if config.model is not None:
        payload["model"] = config.model
    return payload


def _completion_text(response: dict) -> str:
    try:
        choices = response["choices"]
        text = choices[0]["text"]
    except (KeyError, IndexError, TypeError):
        raise MalformedResponseError(
            f"completion response missing choices[0].text: {response!r}")
    if not isinstance(text, str):
        raise MalformedResponseError("completion text is not a string")
    return text


def generate_article(prompt: PromptRecord, config: GenerationConfig, client,
                     source_article, temperature: float | None = None,
                     tag: str | None = None, cache: CompletionCache | None = None) -> Article:
    """One completion call (or cache hit) turned into a generated Article.

    Transport errors are retried with exponential backoff and become
    GenerationError after the last attempt; a reply without usable text is a
    MalformedResponseError and is not retried.
    """
    temperature = config.temperature if temperature is None else temperature
    payload = _payload(prompt, config, temperature)
    key = CompletionCache.key(payload)

    response = None
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            response = hit["response"]
    if response is None:
        last = None
        for attempt in range(config.retry_attempts):
            try:
                response = client.complete(payload)
                break
            except MalformedResponseError:
                raise
            except Exception as exc:
                last = exc
                if attempt + 1 < config.retry_attempts:
                    time.sleep(config.retry_backoff * (2 ** attempt))
        else:
            raise GenerationError(
                f"completion failed after {config.retry_attempts} attempts "
                f"for article {prompt.article_id}") from last
        _completion_text(response)  # validate before caching
        if cache is not None:
            cache.put(key, payload, response)

    body = extract_body(_completion_text(response)).strip()
    if not body:
        raise GenerationError(f"empty completion body for article {prompt.article_id}")

    return Article(
        id=article_id(source_article.title, body),
        title=source_article.title,
        description=source_article.description,
        byline=None,
        published_at=source_article.published_at,
        url=None,
        body=body,
        origin="generated",
        model_tag=tag,
    )


@dataclass(frozen=True)
class GenerationFailure:
    temperature: float
    article_id: str
    reason: str


@dataclass(frozen=True)
class GenerationRun:
    """One generated corpus per temperature plus any per-article failures."""

    corpora: dict  # temperature -> Corpus
    failures: tuple


def run_generation(corpus, strategy: str, config: GenerationConfig, client,
                   temperatures=None, framework_provider=None,
                   cache: CompletionCache | None = None) -> GenerationRun:
    """Generate a counterfactual corpus per temperature.

    framework_provider is a callable article -> FrameworkSnapshot used by the
    static and rolling strategies. Articles whose generation fails are
    reported; the run only fails when every article fails.
    """
    temps = list(temperatures) if temperatures is not None else [config.temperature]
    if cache is None and config.cache_dir:
        cache = CompletionCache(config.cache_dir)
    articles = list(corpus)

    corpora = {}
    failures = []
    for temperature in temps:
        tag = model_tag(strategy, temperature)

        def one(article):
            framework = framework_provider(article) if framework_provider else None
            prompt = build_prompt(article, strategy, framework)
            return generate_article(prompt, config, client, article,
                                    temperature=temperature, tag=tag, cache=cache)

        generated = []
        with ThreadPoolExecutor(max_workers=config.max_in_flight) as pool:
            futures = [(article, pool.submit(one, article)) for article in articles]
            for article, future in futures:
                try:
                    result = future.result()
                    generated.append(result)
                    if cache is not None:
                        cache.mark_done(article.id, tag)
                except Exception as exc:
                    failures.append(GenerationFailure(
                        temperature=temperature, article_id=article.id,
                        reason=str(exc)))
        corpora[temperature] = Corpus(articles=tuple(generated), label=tag)

    attempted = len(temps) * len(articles)
    if attempted > 0 and len(failures) == attempted:
        raise GenerationError(
            f"all {attempted} generation attempts failed; first: "
            f"{failures[0].reason}")
    return GenerationRun(corpora=corpora, failures=tuple(failures))
