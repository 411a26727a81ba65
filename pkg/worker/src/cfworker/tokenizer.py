"""Tokenizers behind one protocol: encode, decode, vocab_size, eos_token_id.

CharTokenizer is a dependency-free character model used by smoke training;
HFTokenizer wraps a pretrained subword tokenizer for the real recipe. A
checkpoint directory holds exactly one of them.
"""

from __future__ import annotations

import json
from pathlib import Path

CHAR_TOKENIZER_FILE = "char_tokenizer.json"

# index 0 swallows characters outside the training alphabet
UNK = "\x00"


class CharTokenizer:
    """Character-level tokenizer built from the training text."""

    def __init__(self, alphabet):
        chars = [UNK] + sorted(set(alphabet) - {UNK})
        self.itos = chars
        self.stoi = {ch: i for i, ch in enumerate(chars)}
        self.eos_token_id = None

    @classmethod
    def from_text(cls, text: str) -> "CharTokenizer":
        return cls(set(text))

    @property
    def vocab_size(self) -> int:
        return len(self.itos)

    def encode(self, text: str) -> list:
        return [self.stoi.get(ch, 0) for ch in text]

    def decode(self, ids) -> str:
        return "".join(self.itos[i] for i in ids if i != 0)

    def save(self, directory) -> None:
        path = Path(directory) / CHAR_TOKENIZER_FILE
        path.write_text(json.dumps({"alphabet": self.itos[1:]}),
                        encoding="utf-8")

    @classmethod
    def load(cls, directory) -> "CharTokenizer":
        path = Path(directory) / CHAR_TOKENIZER_FILE
        return cls(json.loads(path.read_text(encoding="utf-8"))["alphabet"])


class HFTokenizer:
    """Adapter giving a Hugging Face tokenizer the worker protocol."""

    def __init__(self, inner):
        self.inner = inner
        self.eos_token_id = inner.eos_token_id

    @property
    def vocab_size(self) -> int:
        return len(self.inner)

    def encode(self, text: str) -> list:
        return self.inner.encode(text)

    def decode(self, ids) -> str:
        return self.inner.decode(ids)

    def save(self, directory) -> None:
        self.inner.save_pretrained(directory)


def save_tokenizer(tokenizer, directory) -> None:
    tokenizer.save(directory)


def load_tokenizer(directory):
    """CharTokenizer when its file is present, else the HF tokenizer."""
    if (Path(directory) / CHAR_TOKENIZER_FILE).exists():
        return CharTokenizer.load(directory)
    from transformers import AutoTokenizer

    return HFTokenizer(AutoTokenizer.from_pretrained(directory))
