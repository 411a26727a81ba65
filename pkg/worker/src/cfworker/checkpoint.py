"""Checkpoint directory layout: model weights plus exactly one tokenizer.

    checkpoint/
        config.json            model architecture (Hugging Face format)
        model.safetensors      weights
        char_tokenizer.json    smoke tokenizer, OR the usual HF tokenizer files
"""

from __future__ import annotations

from pathlib import Path

from cfworker.errors import TrainingError
from cfworker.tokenizer import load_tokenizer, save_tokenizer


def save_checkpoint(model, tokenizer, directory) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    model.save_pretrained(directory)
    save_tokenizer(tokenizer, directory)
    return directory


def load_checkpoint(directory):
    """Returns (model, tokenizer) in eval mode."""
    directory = Path(directory)
    if not directory.is_dir():
        raise TrainingError(f"checkpoint directory not found: {directory}")
    from transformers import AutoModelForCausalLM

    model = AutoModelForCausalLM.from_pretrained(directory)
    model.eval()
    return model, load_tokenizer(directory)


def load_base(name_or_path):
    """Pretrained base model for the full recipe; missing model is fatal."""
    from transformers import AutoModelForCausalLM, AutoTokenizer

    from cfworker.tokenizer import HFTokenizer

    try:
        model = AutoModelForCausalLM.from_pretrained(name_or_path)
        tokenizer = HFTokenizer(AutoTokenizer.from_pretrained(name_or_path))
    except (OSError, ValueError) as exc:
        raise TrainingError(
            f"base model {name_or_path!r} is not available locally and could "
            f"not be fetched: {exc}")
    return model, tokenizer
