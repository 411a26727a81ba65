"""Completions endpoint over a fine-tuned checkpoint.

POST /v1/completions with JSON {prompt, temperature, max_tokens, model?,
seed?} answers {choices: [{text}]}. Temperature is a divisor applied to the
logits before the softmax; sampling is plain multinomial. Invalid requests
get a 4xx JSON body; a seed makes the completion deterministic.
"""

from __future__ import annotations

import threading
import uuid

import torch
from fastapi import FastAPI
from pydantic import BaseModel, Field


class CompletionRequest(BaseModel):
    prompt: str = Field(min_length=1)
    temperature: float = Field(gt=0)
    max_tokens: int = Field(ge=1)
    model: str | None = None
    seed: int | None = None


@torch.no_grad()
def sample_completion(model, tokenizer, prompt: str, temperature: float,
                      max_tokens: int, seed=None):
    """Sample up to max_tokens from softmax(logits / temperature).

    Returns (text, finish_reason): "stop" when the model emitted its
    end-of-sequence token, "length" when a budget or the context ran out.
    """
    limit = model.config.n_positions
    ids = tokenizer.encode(prompt)[-(limit - 1):]
    generator = torch.Generator()
    if seed is not None:
        generator.manual_seed(seed)

    generated = []
    reason = "length"
    out = model(input_ids=torch.tensor([ids], dtype=torch.long),
                use_cache=True)
    while len(generated) < max_tokens:
        logits = out.logits[0, -1]
        probs = torch.softmax(logits / temperature, dim=-1)
        next_id = int(torch.multinomial(probs, 1, generator=generator))
        if next_id == tokenizer.eos_token_id:
            reason = "stop"
            break
        generated.append(next_id)
        if len(ids) + len(generated) >= limit:
            break
        out = model(input_ids=torch.tensor([[next_id]], dtype=torch.long),
                    past_key_values=out.past_key_values, use_cache=True)
    return tokenizer.decode(generated), reason


def make_app(model, tokenizer, model_name: str = "cfworker",
             max_concurrency: int = 2) -> FastAPI:
    model.eval()
    gate = threading.Semaphore(max_concurrency)
    app = FastAPI(title="cfworker completions")

    @app.post("/v1/completions")
    def completions(request: CompletionRequest):
        with gate:
            text, reason = sample_completion(
                model, tokenizer, request.prompt, request.temperature,
                request.max_tokens, seed=request.seed)
        return {
            "id": f"cmpl-{uuid.uuid4().hex[:12]}",
            "object": "text_completion",
            "model": request.model or model_name,
            "choices": [{"index": 0, "text": text, "finish_reason": reason}],
        }

    return app
